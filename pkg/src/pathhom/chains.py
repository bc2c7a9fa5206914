"""Elementary paths, chains, forms and the operators between them.

An elementary path is a tuple of vertex identifiers. Chains carry exact
coefficients (``int``, or ``Fraction`` for field computations).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .digraph import Digraph, vertex_key
from .errors import (
    DimMismatch,
    EndpointMismatch,
    IndexOutOfRange,
    MixedDimensions,
    ParseError,
    UnknownVertex,
)

ElemPath = tuple

__all__ = [
    "ElemPath",
    "Chain",
    "Form",
    "path_key",
    "classify_path",
    "boundary",
    "delta_component",
    "allowed_basis",
    "allowed_paths_between",
    "concatenate",
    "coboundary_d",
    "pair",
    "width",
    "is_allowed",
    "is_regular",
    "chain_to_json",
    "chain_from_json",
    "format_chain_text",
    "parse_chain_text",
]


def path_key(p: ElemPath) -> tuple:
    return tuple(vertex_key(v) for v in p)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class Chain:
    """A finite combination of elementary paths of a single length ``dim``."""

    __slots__ = ("dim", "_terms", "_hash")
    kind = "chain"

    def __init__(self, dim: int, terms: Mapping[ElemPath, Rational] | Iterable = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        clean: dict[ElemPath, Rational] = {}
        for path, c in terms:
            path = tuple(path)
            if len(path) != dim + 1:
                raise MixedDimensions(f"path {path} does not have length {dim}")
            c = clean.get(path, 0) + c
            clean[path] = c
        self.dim = dim
        self._terms = {p: _norm(c) for p, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = {p: _norm(c) for p, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    @classmethod
    def elementary(cls, path: Iterable[str], coeff: Rational = 1):
        path = tuple(path)
        return cls._raw(len(path) - 1, {path: coeff})

    @classmethod
    def zero(cls, dim: int):
        return cls._raw(dim, {})

    @classmethod
    def from_items(cls, dim: int, items: Iterable[tuple[Iterable[str], Rational]]):
        return cls(dim, [(tuple(p), c) for p, c in items])

    # -- mapping-like access ------------------------------------------------
    def items(self) -> list[tuple[ElemPath, Rational]]:
        return sorted(self._terms.items(), key=lambda kv: path_key(kv[0]))

    def paths(self) -> list[ElemPath]:
        return sorted(self._terms, key=path_key)

    def coeffs(self) -> dict[ElemPath, Rational]:
        return dict(self._terms)

    def __getitem__(self, path) -> Rational:
        return self._terms.get(tuple(path), 0)

    def __iter__(self) -> Iterator[ElemPath]:
        return iter(self.paths())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def vertices(self) -> set[str]:
        return {v for p in self._terms for v in p}

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.dim != self.dim and self._terms and other._terms:
            raise DimMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        dim = self.dim if self._terms else other.dim
        out = dict(self._terms)
        for p, c in other._terms.items():
            out[p] = out.get(p, 0) + c
        return type(self)._raw(dim, out)

    def __neg__(self):
        return type(self)._raw(self.dim, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, Rational):
            return NotImplemented
        return type(self)._raw(self.dim, {p: c * k for p, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.dim if self._terms else None,
                               frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0, dim={self.dim})"
        return f"{type(self).__name__}({format_chain_text(self)})"

    def restrict(self, keep) -> "Chain":
        """Terms whose path satisfies ``keep(path)``."""
        return type(self)._raw(self.dim, {p: c for p, c in self._terms.items() if keep(p)})

    def relabel(self, f) -> "Chain":
        out: dict = {}
        for p, c in self._terms.items():
            q = tuple(f(v) for v in p)
            out[q] = out.get(q, 0) + c
        return type(self)._raw(self.dim, out)


class Form(Chain):
    """A finite combination of dual elementary forms ``e^{i_0...i_n}``."""

    __slots__ = ()
    kind = "form"

    def __init__(self, dim, terms=()):
        super().__init__(dim, terms)
        self._terms = {p: _norm(Fraction(c)) for p, c in self._terms.items()}

    @classmethod
    def _raw(cls, dim, terms):
        obj = super()._raw(dim, terms)
        obj._terms = {p: _norm(Fraction(c)) for p, c in obj._terms.items()}
        return obj


def width(c: Chain) -> Rational:
    return sum(abs(x) for x in c.coeffs().values())


# -- path classification ------------------------------------------------------

def is_allowed(G: Digraph, p: ElemPath) -> bool:
    return all((p[k], p[k + 1]) in G.edges for k in range(len(p) - 1))


def is_regular(p: ElemPath) -> bool:
    return len(set(p)) == len(p)


def classify_path(G: Digraph, p: ElemPath) -> dict:
    for v in p:
        if v not in G:
            raise UnknownVertex(v)
    return {"allowed": is_allowed(G, p), "regular": is_regular(p)}


def boundary(c: Chain) -> Chain:
    """Alternating face sum in the free module (no allowedness filtering)."""
    out: dict[ElemPath, Rational] = {}
    if c.dim == 0:
        return type(c).zero(-1)
    for p, coeff in c.coeffs().items():
        for j in range(len(p)):
            face = p[:j] + p[j + 1:]
            out[face] = out.get(face, 0) + (coeff if j % 2 == 0 else -coeff)
    return type(c)._raw(c.dim - 1, out)


def delta_component(c: Chain, i: int) -> Chain:
    """The signed i-th face map; these sum to :func:`boundary`."""
    if not 0 <= i <= c.dim:
        raise IndexOutOfRange(f"face index {i} outside 0..{c.dim}")
    sign = -1 if i % 2 else 1
    out: dict[ElemPath, Rational] = {}
    for p, coeff in c.coeffs().items():
        face = p[:i] + p[i + 1:]
        out[face] = out.get(face, 0) + sign * coeff
    return type(c)._raw(c.dim - 1, out)


@lru_cache(maxsize=256)
def _allowed_basis(G: Digraph, n: int) -> tuple[ElemPath, ...]:
    if n < 0:
        return ()
    out: list[ElemPath] = []

    def extend(path):
        if len(path) == n + 1:
            out.append(tuple(path))
            return
        seen = set(path)
        for w in G.successors(path[-1]):
            if w not in seen:
                path.append(w)
                extend(path)
                path.pop()

    for v in G.vertices:
        extend([v])
    out.sort(key=path_key)
    return tuple(out)


def allowed_basis(G: Digraph, n: int) -> list[ElemPath]:
    """All allowed regular n-paths of G, lexicographically ordered."""
    return list(_allowed_basis(G, n))


def allowed_paths_between(G: Digraph, n: int, S: str, E: str) -> list[ElemPath]:
    return [p for p in _allowed_basis(G, n) if p[0] == S and p[-1] == E]


def concatenate(u: Chain, v: Chain) -> Chain:
    """Bilinear join of paths at a shared vertex (written once)."""
    out: dict[ElemPath, Rational] = {}
    for p, a in u.coeffs().items():
        for q, b in v.coeffs().items():
            if p[-1] != q[0]:
                raise EndpointMismatch(f"{p} does not end where {q} starts")
            r = p + q[1:]
            out[r] = out.get(r, 0) + a * b
    return type(u)._raw(u.dim + v.dim, out)


def coboundary_d(V: Iterable[str], omega: Form) -> Form:
    """The dual differential, restricted to regular forms."""
    V = list(V)
    out: dict[ElemPath, Rational] = {}
    for p, coeff in omega.coeffs().items():
        used = set(p)
        for k in V:
            if k in used:
                continue
            for pos in range(len(p) + 1):
                q = p[:pos] + (k,) + p[pos:]
                out[q] = out.get(q, 0) + (coeff if pos % 2 == 0 else -coeff)
    return Form._raw(omega.dim + 1, out)


def pair(omega: Form, u: Chain) -> Rational:
    if omega.dim != u.dim and omega and u:
        raise DimMismatch(f"form of dim {omega.dim} against chain of dim {u.dim}")
    small, big = (omega, u) if len(omega) <= len(u) else (u, omega)
    total = sum((c * big[p] for p, c in small.coeffs().items()), Fraction(0))
    return _norm(Fraction(total))


# -- formats --------------------------------------------------------------------

_TERM = re.compile(r"([+-]?\s*[0-9]+(?:/[0-9]+)?)\s*\[([^\]]*)\]")


def _fmt_coeff(c) -> str:
    s = str(c)
    return s if s.startswith("-") else "+" + s


def format_chain_text(c: Chain) -> str:
    return " ".join(f"{_fmt_coeff(coeff)} [{' '.join(p)}]" for p, coeff in c.items())


def parse_chain_text(text: str, dim: int | None = None, cls=Chain) -> Chain:
    body = text.strip()
    items = []
    pos = 0
    for m in _TERM.finditer(body):
        if body[pos:m.start()].strip():
            raise ParseError(0, body[pos:m.start()])
        pos = m.end()
        coeff = Fraction(m.group(1).replace(" ", ""))
        path = tuple(m.group(2).split())
        if not path:
            raise ParseError(0, m.group(0))
        items.append((path, coeff))
    if body[pos:].strip():
        raise ParseError(0, body[pos:])
    dims = {len(p) - 1 for p, _ in items}
    if len(dims) > 1:
        raise MixedDimensions(f"paths of lengths {sorted(dims)} in one chain")
    if dim is None:
        if not dims:
            raise ParseError(0, "cannot infer dimension of an empty chain")
        dim = dims.pop()
    elif dims and dims != {dim}:
        raise MixedDimensions(f"declared dim {dim}, found {sorted(dims)}")
    return cls(dim, items)


def chain_to_json(c: Chain) -> dict:
    out = {"dim": c.dim,
           "terms": [{"c": c_ if isinstance(c_, int) else str(c_), "path": list(p)}
                     for p, c_ in c.items()]}
    if isinstance(c, Form):
        out["form"] = True
    return out


def chain_from_json(obj: dict | str) -> Chain:
    if isinstance(obj, str):
        obj = json.loads(obj)
    cls = Form if obj.get("form") else Chain
    try:
        dim = int(obj["dim"])
        items = [(tuple(t["path"]), Fraction(str(t["c"]))) for t in obj["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(0, str(obj)[:80]) from exc
    dims = {len(p) - 1 for p, _ in items}
    if dims and dims != {dim}:
        raise MixedDimensions(f"declared dim {dim}, found {sorted(dims)}")
    return cls(dim, items)
