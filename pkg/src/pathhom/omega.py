"""The lattices of boundary-invariant allowed paths and their chain complex."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .chains import (
    Chain,
    ElemPath,
    _allowed_basis,
    boundary,
    delta_component,
    format_chain_text,
    is_allowed,
    is_regular,
)
from .digraph import Digraph, vertex_key
from .errors import PropertyFailure
from .linalg import integer_left_kernel, matmul

__all__ = [
    "Stratum",
    "OmegaLayer",
    "OmegaComplex",
    "omega_layer",
    "omega_basis",
    "membership",
    "build_complex",
    "format_basis_dump",
]

EMPTY_PATH: ElemPath = ()


@dataclass
class Stratum:
    """Allowed n-paths sharing start and end, with a Hermite basis of their
    boundary-invariant combinations."""

    start: str
    end: str
    paths: list[ElemPath]
    index: dict[ElemPath, int]
    hnf: list[list[int]]
    offset: int  # position of the first basis chain in the layer

    def coordinates(self, coeffs: dict, exact_int: bool) -> list | None:
        v = [0] * len(self.paths)
        for p, c in coeffs.items():
            j = self.index.get(p)
            if j is None:
                return None
            v[j] = c
        coords = []
        for row in self.hnf:
            piv = next(j for j, x in enumerate(row) if x)
            if exact_int:
                q, rem = divmod(v[piv], row[piv])
                if rem:
                    return None
            else:
                q = Fraction(v[piv]) / row[piv]
            coords.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            return None
        return coords


@dataclass
class OmegaLayer:
    """Basis of Omega_n as a list of chains, organised by (start, end)."""

    n: int
    basis: list[Chain]
    strata: dict[tuple[str, str], Stratum]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, c: Chain, integral: bool = True) -> list | None:
        """Coordinates of ``c`` in the basis, or None when c is outside the
        lattice (``integral``) or outside the span (rational mode)."""
        out = [0] * self.rank
        if not c:
            return out
        if self.n == -1:
            return [c[EMPTY_PATH]] if set(c.coeffs()) == {EMPTY_PATH} else None
        groups: dict[tuple[str, str], dict] = defaultdict(dict)
        for p, x in c.coeffs().items():
            groups[(p[0], p[-1])][p] = x
        exact = integral and all(isinstance(x, int) for x in c.coeffs().values())
        if integral and not exact:
            if not all(Fraction(x).denominator == 1 for x in c.coeffs().values()):
                return None
            groups = {k: {p: int(x) for p, x in g.items()} for k, g in groups.items()}
            exact = True
        for key, coeffs in groups.items():
            st = self.strata.get(key)
            if st is None:
                return None
            coords = st.coordinates(coeffs, exact)
            if coords is None:
                return None
            out[st.offset:st.offset + len(coords)] = coords
        return out

    def combine(self, coords) -> Chain:
        total: dict = {}
        for x, b in zip(coords, self.basis):
            if x:
                for p, c in b.coeffs().items():
                    total[p] = total.get(p, 0) + x * c
        return Chain._raw(self.n, total)


def _interior_bad_faces(G: Digraph, p: ElemPath):
    """Non-allowed faces of an allowed path with their signs.

    Only deleting an interior vertex can break allowedness, and such a face
    keeps the endpoints, so the constraints never mix strata.
    """
    for j in range(1, len(p) - 1):
        if (p[j - 1], p[j + 1]) not in G.edges:
            yield p[:j] + p[j + 1:], (-1 if j % 2 else 1)


@lru_cache(maxsize=256)
def omega_layer(G: Digraph, n: int) -> OmegaLayer:
    if n == -1:
        return OmegaLayer(-1, [Chain._raw(-1, {EMPTY_PATH: 1})], {})
    if n < -1:
        return OmegaLayer(n, [], {})
    groups: dict[tuple[str, str], list[ElemPath]] = defaultdict(list)
    for p in _allowed_basis(G, n):
        groups[(p[0], p[-1])].append(p)
    strata: dict[tuple[str, str], Stratum] = {}
    basis: list[Chain] = []
    for key in sorted(groups, key=lambda k: (vertex_key(k[0]), vertex_key(k[1]))):
        paths = groups[key]
        face_index: dict[ElemPath, int] = {}
        rows = []
        for p in paths:
            row: dict[int, int] = {}
            for face, s in _interior_bad_faces(G, p):
                col = face_index.setdefault(face, len(face_index))
                row[col] = row.get(col, 0) + s
            rows.append(row)
        ncols = len(face_index)
        dense = [[r.get(j, 0) for j in range(ncols)] for r in rows]
        if ncols == 0:
            hnf = [[int(i == j) for j in range(len(paths))] for i in range(len(paths))]
        else:
            hnf = integer_left_kernel(dense, ncols)
        if not hnf:
            continue
        st = Stratum(key[0], key[1], paths, {p: i for i, p in enumerate(paths)}, hnf, len(basis))
        strata[key] = st
        for row in hnf:
            basis.append(Chain._raw(n, {paths[j]: x for j, x in enumerate(row) if x}))
    return OmegaLayer(n, basis, strata)


def omega_basis(G: Digraph, n: int) -> list[Chain]:
    """A saturated integer basis of Omega_n(G), deterministic in term order."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return list(omega_layer(G, n).basis)


def _face_criterion(G: Digraph, c: Chain) -> bool:
    for i in range(c.dim + 1):
        if not all(is_allowed(G, q) for q in delta_component(c, i).coeffs()):
            return False
    return True


def membership(G: Digraph, c: Chain) -> bool:
    """Whether ``c`` is an allowed regular chain with allowed boundary."""
    for p in c.coeffs():
        if not all(v in G for v in p) or not is_regular(p) or not is_allowed(G, p):
            return False
    direct = c.dim == 0 or all(is_allowed(G, q) for q in boundary(c).coeffs())
    if direct != _face_criterion(G, c):
        raise PropertyFailure("face criterion disagrees with boundary criterion",
                              format_chain_text(c))
    return direct


@dataclass
class OmegaComplex:
    """The (optionally reduced) complex of Omega lattices up to ``maxdim``.

    ``boundary_matrices[n]`` has one row per basis chain of Omega_n, holding
    the coordinates of its boundary in the Omega_{n-1} basis.
    """

    digraph: Digraph
    maxdim: int
    reduced: bool
    layers: dict[int, OmegaLayer]
    boundary_matrices: dict[int, list[list[int]]] = field(repr=False)

    @property
    def bases(self) -> dict[int, list[Chain]]:
        return {n: layer.basis for n, layer in self.layers.items()}

    def ranks(self) -> list[int]:
        return [self.layers[n].rank for n in range(0, self.maxdim + 1)]

    @property
    def complete(self) -> bool:
        """True when every nonzero Omega layer is included."""
        return self.maxdim >= len(self.digraph.vertices) - 1

    def matrix(self, n: int) -> list[list[int]]:
        """The boundary matrix out of degree n (empty shapes outside range)."""
        if n in self.boundary_matrices:
            return self.boundary_matrices[n]
        rows = self.layers[n].rank if n in self.layers else 0
        return [[] for _ in range(rows)]


def _boundary_rows(src: OmegaLayer, dst: OmegaLayer) -> list[list[int]]:
    rows = []
    for b in src.basis:
        if src.n == 0:
            d = Chain._raw(-1, {EMPTY_PATH: sum(b.coeffs().values())})
        else:
            d = boundary(b)
        coords = dst.coordinates(d)
        if coords is None:
            raise PropertyFailure("boundary left the Omega lattice", format_chain_text(b))
        rows.append(coords)
    return rows


def build_complex(G: Digraph, maxdim: int | None = None, reduced: bool = False) -> OmegaComplex:
    if maxdim is None:
        maxdim = max(len(G.vertices) - 1, 0)
    if maxdim < 0:
        raise ValueError("maxdim must be nonnegative")
    low = -1 if reduced else 0
    layers = {n: omega_layer(G, n) for n in range(low, maxdim + 1)}
    mats: dict[int, list[list[int]]] = {}
    for n in range(low + 1, maxdim + 1):
        mats[n] = _boundary_rows(layers[n], layers[n - 1])
    for n in range(low + 2, maxdim + 1):
        a, b = mats[n], mats[n - 1]
        if a and b and b[0]:
            prod = matmul(a, b)
            if any(any(row) for row in prod):
                raise PropertyFailure(f"boundary squared is nonzero at degree {n}")
    return OmegaComplex(G, maxdim, reduced, layers, mats)


def format_basis_dump(cx: OmegaComplex) -> str:
    lines = []
    for n in range(0, cx.maxdim + 1):
        for b in cx.layers[n].basis:
            lines.append(f"dim={n} {format_chain_text(b)}")
    return "\n".join(lines) + ("\n" if lines else "")
