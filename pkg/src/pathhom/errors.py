"""Exception types.

Input errors derive from :class:`InputError` (CLI exit code 2); property
failures found by verifiers derive from :class:`PropertyFailure` (exit 1).
"""


class PathHomError(Exception):
    pass


class InputError(PathHomError, ValueError):
    pass


class PropertyFailure(PathHomError):
    """A checked mathematical property does not hold; carries the data."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class SelfLoop(InputError):
    def __init__(self, v):
        super().__init__(f"self-loop at vertex {v!r}")
        self.vertex = v


class DuplicateEdge(InputError):
    def __init__(self, u, v):
        super().__init__(f"duplicate edge {u!r} -> {v!r}")
        self.edge = (u, v)


class EmptyIdentifier(InputError):
    def __init__(self, v=""):
        super().__init__(f"empty or whitespace-containing vertex identifier {v!r}")


class InvalidCharacter(InputError):
    def __init__(self, ch):
        super().__init__(f"line digraph orientation must be '+' or '-', got {ch!r}")


class TooLarge(InputError):
    def __init__(self, n, bound):
        super().__init__(f"{n} vertices exceeds the isomorphism search bound {bound}")


class ParseError(InputError):
    def __init__(self, line, text=""):
        super().__init__(f"parse error at line {line}: {text!r}")
        self.line = line


class UnknownVertex(InputError):
    def __init__(self, v):
        super().__init__(f"unknown vertex {v!r}")
        self.vertex = v


class MixedDimensions(InputError):
    pass


class EndpointMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class DimMismatch(InputError):
    pass


class NotOmegaMember(InputError):
    pass


class NoCommonEndpoints(InputError):
    pass


class InsufficientDepth(InputError):
    pass


class RetractFixityError(InputError):
    pass


class NotACover(PropertyFailure):
    pass


class PathOutsideCover(PropertyFailure):
    pass


class NotEpimorphism(PropertyFailure):
    pass


class ExactnessFailure(PropertyFailure):
    pass


class StructureViolation(PropertyFailure):
    pass


class NoValidChoice(PropertyFailure):
    pass


class SolveFailure(PropertyFailure):
    pass


class DualityMismatch(PropertyFailure):
    pass


class WitnessFailure(PropertyFailure):
    pass


class NotDigraphMap(PropertyFailure):
    def __init__(self, k, detail=None):
        super().__init__(f"step {k} is not a digraph map", detail)
        self.step = k
