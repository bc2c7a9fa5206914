"""Integer and rational path (co)homology, Mayer-Vietoris and Kunneth checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .chains import Chain, _allowed_basis, boundary, coboundary_d, is_allowed, Form
from .digraph import Digraph, cartesian_product, subgraph_combine, validate_digraph
from .errors import (
    DualityMismatch,
    ExactnessFailure,
    InsufficientDepth,
    NotACover,
    NotEpimorphism,
    PathOutsideCover,
)
from .linalg import RationalEchelon, integer_left_kernel, smith_normal_form
from .omega import EMPTY_PATH, OmegaComplex, build_complex, omega_layer

__all__ = [
    "smith_normal_form",
    "HomologyResult",
    "homology",
    "betti_numbers",
    "cohomology",
    "RationalHomology",
    "mv_pair_check",
    "mv_les_verify",
    "kunneth_check",
]

Z, Q = "z", "q"


def _coeff(coeff: str) -> str:
    c = str(coeff).lower()
    if c in ("z", "int", "integers", "zz"):
        return Z
    if c in ("q", "rat", "rationals", "qq"):
        return Q
    raise ValueError(f"unknown coefficient ring {coeff!r}")


def _dense_to_sparse(rows: Sequence[Sequence]) -> list[dict]:
    return [{j: x for j, x in enumerate(r) if x} for r in rows]


def rank_rows(rows: Sequence[Sequence]) -> int:
    ech = RationalEchelon()
    for r in _dense_to_sparse(rows):
        ech.add(r)
    return ech.rank


@dataclass
class HomologyResult:
    reduced: bool
    coeff: str
    betti: dict[int, int]
    torsion: dict[int, list[int]]

    def degrees(self) -> list[int]:
        return sorted(self.betti)

    def betti_list(self, start: int = 0) -> list[int]:
        return [self.betti[n] for n in self.degrees() if n >= start]

    def is_trivial(self) -> bool:
        return not any(self.betti.values()) and not any(self.torsion.values())

    def to_json(self) -> dict:
        return {"reduced": self.reduced,
                "degrees": [{"n": n, "betti": self.betti[n], "torsion": list(self.torsion[n])}
                            for n in self.degrees()]}

    def same_groups(self, other: "HomologyResult") -> bool:
        common = set(self.betti) & set(other.betti)
        return all(self.betti[n] == other.betti[n] and self.torsion[n] == other.torsion[n]
                   for n in common)


def homology(cx: OmegaComplex, coeff: str = Z, maxdim: int | None = None) -> HomologyResult:
    """Homology of the complex in degrees up to ``maxdim``.

    Degree n needs the boundary out of degree n+1; a complex that stops
    short of that (and is not complete) raises :class:`InsufficientDepth`.
    """
    coeff = _coeff(coeff)
    top = cx.maxdim if cx.complete else cx.maxdim - 1
    if maxdim is None:
        maxdim = top
    if maxdim > top:
        raise InsufficientDepth(f"degree {maxdim} needs the complex built to {maxdim + 1}")
    low = -1 if cx.reduced else 0
    ranks: dict[int, int] = {}
    invariants: dict[int, list[int]] = {}
    for n in range(low + 1, min(maxdim + 1, cx.maxdim) + 1):
        M = cx.boundary_matrices[n]
        if coeff == Z:
            snf = smith_normal_form(M)
            ranks[n], invariants[n] = snf.rank, snf.invariants
        else:
            ranks[n], invariants[n] = rank_rows(M), []
    betti, torsion = {}, {}
    for n in range(low, maxdim + 1):
        dim = cx.layers[n].rank
        betti[n] = dim - ranks.get(n, 0) - ranks.get(n + 1, 0)
        torsion[n] = [d for d in invariants.get(n + 1, []) if d > 1]
    return HomologyResult(cx.reduced, coeff, betti, torsion)


def betti_numbers(G: Digraph, maxdim: int, coeff: str = Q, reduced: bool = False) -> list[int]:
    """Betti numbers in degrees 0..maxdim."""
    full = len(G.vertices) - 1
    depth = maxdim if maxdim >= full else maxdim + 1
    cx = build_complex(G, max(depth, 0), reduced)
    res = homology(cx, coeff, maxdim)
    return [res.betti.get(n, 0) for n in range(0, maxdim + 1)]


# -- cohomology ---------------------------------------------------------------

def _regular_nonallowed_faces(G: Digraph, n: int) -> list[tuple]:
    """Non-allowed regular n-paths that occur as faces of allowed (n+1)-paths.

    Only these can have a coboundary with an allowed component.
    """
    out = set()
    for p in _allowed_basis(G, n + 1):
        for j in range(1, len(p) - 1):
            if (p[j - 1], p[j + 1]) not in G.edges:
                out.add(p[:j] + p[j + 1:])
    return sorted(out)


def _projected_coboundary_rank(G: Digraph, sources: list[tuple], n: int) -> int:
    """dim of proj_A(d(span of e^q for q in sources)) inside A^{n+1}."""
    index = {p: i for i, p in enumerate(_allowed_basis(G, n + 1))}
    ech = RationalEchelon()
    for q in sources:
        dq = coboundary_d(G.vertices, Form.elementary(q))
        vec = {index[p]: c for p, c in dq.coeffs().items() if p in index}
        if vec:
            ech.add(vec)
    return ech.rank


def _quotient_cochain_ranks(G: Digraph, maxdim: int) -> list[int]:
    """Cohomology ranks of the quotient complex A^n / proj_A(d N^{n-1})."""
    dim_quot, rank_d = {}, {}
    for n in range(0, maxdim + 2):
        allowed = list(_allowed_basis(G, n))
        bad_prev = _regular_nonallowed_faces(G, n - 1) if n >= 1 else []
        j_dim = _projected_coboundary_rank(G, bad_prev, n - 1) if n >= 1 else 0
        dim_quot[n] = len(allowed) - j_dim
        bad = _regular_nonallowed_faces(G, n)
        r_all = _projected_coboundary_rank(G, allowed + bad, n)
        r_bad = _projected_coboundary_rank(G, bad, n)
        rank_d[n] = r_all - r_bad
    return [dim_quot[n] - rank_d[n] - (rank_d[n - 1] if n >= 1 else 0)
            for n in range(0, maxdim + 1)]


def cohomology(G: Digraph, maxdim: int | None = None) -> dict:
    """Rational cohomology ranks by the quotient cochain complex and by duality."""
    if maxdim is None:
        maxdim = max(len(G.vertices) - 1, 0)
    route_a = _quotient_cochain_ranks(G, maxdim)
    route_b = betti_numbers(G, maxdim, Q)
    if route_a != route_b:
        raise DualityMismatch("cochain ranks disagree with dual homology ranks",
                              {"quotient": route_a, "dual": route_b})
    return {"ranks": route_a, "quotient": route_a, "dual": route_b}


# -- rational homology with explicit representatives ------------------------

class RationalHomology:
    """Rational reduced homology of a digraph with cycle representatives.

    Used for Mayer-Vietoris bookkeeping, where classes must be pushed along
    inclusions and compared modulo boundaries.
    """

    def __init__(self, G: Digraph, maxdim: int, reduced: bool = True):
        self.G = G
        self.maxdim = maxdim
        self.cx = build_complex(G, maxdim + 1, reduced) if maxdim + 1 >= 0 else None
        self.low = -1 if reduced else 0
        self._bnd: dict[int, RationalEchelon] = {}
        self._reps: dict[int, list[Chain]] = {}

    def layer(self, p: int):
        return omega_layer(self.G, p)

    def boundaries(self, p: int) -> RationalEchelon:
        if p not in self._bnd:
            ech = RationalEchelon()
            if p + 1 <= self.cx.maxdim:
                for row in _dense_to_sparse(self.cx.matrix(p + 1)):
                    ech.add(row)
            self._bnd[p] = ech
        return self._bnd[p]

    def representatives(self, p: int) -> list[Chain]:
        if p not in self._reps:
            layer = self.layer(p)
            if p == self.low:
                cycles = [[int(i == j) for j in range(layer.rank)] for i in range(layer.rank)]
            else:
                M = self.cx.matrix(p)
                ncols = self.layer(p - 1).rank
                cycles = integer_left_kernel(M, ncols) if ncols else \
                    [[int(i == j) for j in range(layer.rank)] for i in range(layer.rank)]
            ech = RationalEchelon()
            for v in self.boundaries(p).pivots.values():
                ech.add(v[0])
            reps = []
            for z in cycles:
                if ech.add({j: x for j, x in enumerate(z) if x}):
                    reps.append(layer.combine(z))
            self._reps[p] = reps
        return self._reps[p]

    def coords(self, p: int, c: Chain) -> dict:
        if not c:
            return {}
        vec = self.layer(p).coordinates(c, integral=False)
        if vec is None:
            raise ExactnessFailure(f"chain is not in Omega_{p} of {self.G.name}", c)
        return {j: x for j, x in enumerate(vec) if x}

    def betti(self, p: int) -> int:
        return len(self.representatives(p))


def _restrict_to(c: Chain, dim: int) -> Chain:
    return c if c else Chain.zero(dim)


def _boundary_reduced(c: Chain) -> Chain:
    if c.dim == 0:
        return Chain._raw(-1, {EMPTY_PATH: sum(c.coeffs().values())})
    return boundary(c)


class _Node:
    """A direct sum of homology groups in a fixed degree."""

    def __init__(self, name: str, parts: list[RationalHomology], p: int):
        self.name, self.parts, self.p = name, parts, p

    def basis(self) -> list[tuple[Chain, ...]]:
        out = []
        for k, part in enumerate(self.parts):
            for rep in part.representatives(self.p):
                out.append(tuple(rep if i == k else Chain.zero(self.p)
                                 for i in range(len(self.parts))))
        return out

    @property
    def dim(self) -> int:
        return sum(part.betti(self.p) for part in self.parts)

    def _vec(self, elem, offsets) -> dict:
        vec = {}
        for part, c, off in zip(self.parts, elem, offsets):
            for j, x in part.coords(self.p, c).items():
                vec[off + j] = x
        return vec

    def _offsets(self) -> list[int]:
        offs, acc = [], 0
        for part in self.parts:
            offs.append(acc)
            acc += part.layer(self.p).rank
        return offs

    def class_rank(self, elems: list[tuple[Chain, ...]]) -> int:
        offs = self._offsets()
        ech = RationalEchelon()
        for part, off in zip(self.parts, offs):
            for v, _ in part.boundaries(self.p).pivots.values():
                ech.add({off + j: x for j, x in v.items()})
        base = ech.rank
        for e in elems:
            ech.add(self._vec(e, offs))
        return ech.rank - base

    def is_zero_class(self, elem) -> bool:
        return self.class_rank([elem]) == 0


def _cover_check(X: Digraph, Y1: Digraph, Y2: Digraph):
    vx, v1, v2 = set(X.vertices), set(Y1.vertices), set(Y2.vertices)
    if not (v1 <= vx and v2 <= vx and Y1.edges <= X.edges and Y2.edges <= X.edges):
        raise NotACover("pieces are not subgraphs of X")
    if v1 | v2 != vx or Y1.edges | Y2.edges != X.edges:
        raise NotACover("X is not the union of the pieces",
                        {"missing_vertices": sorted(vx - v1 - v2),
                         "missing_edges": sorted(X.edges - Y1.edges - Y2.edges)})


def _lift_solver(X: Digraph, Y1: Digraph, Y2: Digraph, p: int):
    """Echelon over Omega_p(X) coordinates of the images of both pieces."""
    lx = omega_layer(X, p)
    ech = RationalEchelon(track=True)
    gens = []
    for k, Y in enumerate((Y1, Y2)):
        sign = 1 if k == 0 else -1
        for i, b in enumerate(omega_layer(Y, p).basis):
            vec = lx.coordinates(b * sign, integral=False)
            gens.append(vec)
            ech.add({j: x for j, x in enumerate(vec) if x}, (k, i))
    return lx, ech, gens


def mv_pair_check(X: Digraph, Y1: Digraph, Y2: Digraph, maxdim: int | None = None) -> dict:
    """Check that (Y1, Y2) is a Mayer-Vietoris pair covering X."""
    if maxdim is None:
        maxdim = max(len(X.vertices) - 1, 0)
    _cover_check(X, Y1, Y2)
    for p in range(1, maxdim + 1):
        for path in _allowed_basis(X, p):
            if not (is_allowed(Y1, path) and all(v in Y1 for v in path)) and \
                    not (is_allowed(Y2, path) and all(v in Y2 for v in path)):
                raise PathOutsideCover(f"allowed path {' '.join(path)} lies in neither piece",
                                       path)
    report = {"cover": True, "paths_split": True, "degrees": []}
    for p in range(0, maxdim + 1):
        lx, ech, gens = _lift_solver(X, Y1, Y2, p)
        rational = ech.rank == lx.rank
        snf = smith_normal_form(gens) if gens and lx.rank else None
        integral = rational and (lx.rank == 0 or (snf.rank == lx.rank
                                                  and all(d == 1 for d in snf.invariants)))
        if not integral:
            raise NotEpimorphism(f"Omega_{p}(Y1) + Omega_{p}(Y2) does not cover Omega_{p}(X)",
                                 {"p": p, "rank": ech.rank, "target": lx.rank})
        report["degrees"].append({"p": p, "target_rank": lx.rank, "rational": True,
                                  "integral": True})
    return report


def mv_les_verify(X: Digraph, Y1: Digraph, Y2: Digraph, maxdim: int | None = None) -> dict:
    """Verify exactness of the reduced Mayer-Vietoris sequence over Q."""
    if maxdim is None:
        maxdim = max(len(X.vertices) - 1, 0)
    _cover_check(X, Y1, Y2)
    Zg = subgraph_combine(Y1, Y2, "intersection")
    hz, h1, h2, hx = (RationalHomology(G, maxdim) for G in (Zg, Y1, Y2, X))

    def delta(elem):  # H(Z) -> H(Y1) + H(Y2)
        (z,) = elem
        return (z, z)

    def diff(elem):  # H(Y1) + H(Y2) -> H(X)
        a, b = elem
        return (a - b if (a or b) else a,)

    solvers = {}

    def connecting(elem):  # H_p(X) -> H_{p-1}(Z)
        (x,) = elem
        p = x.dim
        if not x:
            return (Chain.zero(p - 1),)
        if p not in solvers:
            solvers[p] = _lift_solver(X, Y1, Y2, p)
        lx, ech, _ = solvers[p]
        vec = lx.coordinates(x, integral=False)
        combo = ech.solve({j: v for j, v in enumerate(vec) if v})
        if combo is None:
            raise ExactnessFailure(f"no preimage for a cycle of X in degree {p}", x)
        a = Chain.zero(p)
        layer1 = omega_layer(Y1, p)
        for (k, i), coef in combo.items():
            if k == 0:
                a = a + layer1.basis[i] * coef
        da = _boundary_reduced(a)
        return (da if da else Chain.zero(p - 1),)

    nodes = []  # (node, map to next)
    for p in range(maxdim, -2, -1):
        nodes.append((_Node(f"H{p}(Z)", [hz], p), delta))
        nodes.append((_Node(f"H{p}(Y1)+H{p}(Y2)", [h1, h2], p), diff))
        nodes.append((_Node(f"H{p}(X)", [hx], p), connecting if p > -1 else None))
    positions = []
    for idx in range(1, len(nodes)):
        node, out_map = nodes[idx]
        prev, in_map = nodes[idx - 1]
        images_in = [in_map(e) for e in prev.basis()]
        rank_in = node.class_rank(images_in)
        if out_map is None:
            rank_out = 0
        else:
            nxt = nodes[idx + 1][0]
            rank_out = nxt.class_rank([out_map(e) for e in node.basis()])
            if nxt.class_rank([out_map(e) for e in images_in]) != 0:
                raise ExactnessFailure(f"composition through {node.name} is not zero", node.name)
        if rank_in + rank_out != node.dim:
            raise ExactnessFailure(f"sequence is not exact at {node.name}",
                                   {"node": node.name, "rank_in": rank_in,
                                    "rank_out": rank_out, "dim": node.dim})
        positions.append({"node": node.name, "dim": node.dim, "rank_in": rank_in,
                          "rank_out": rank_out})
    # Euler characteristic identity from the short exact sequences of chains
    chi = {}
    for name, h in (("X", hx), ("Y1", h1), ("Y2", h2), ("Z", hz)):
        chi[name] = sum((-1) ** (p % 2) * h.betti(p) for p in range(-1, maxdim + 1))
    for p in range(-1, maxdim + 1):
        dims = [omega_layer(G, p).rank for G in (X, Y1, Y2, Zg)]
        if dims[0] != dims[1] + dims[2] - dims[3]:
            raise ExactnessFailure(f"Omega ranks do not split in degree {p}", dims)
    complete = maxdim >= len(X.vertices) - 1
    if complete and chi["X"] != chi["Y1"] + chi["Y2"] - chi["Z"]:
        raise ExactnessFailure("Euler characteristics do not add up", chi)
    return {"exact": True, "intersection": Zg, "positions": positions,
            "euler": chi, "euler_checked": complete,
            "reduced_betti": {name: [h.betti(p) for p in range(-1, maxdim + 1)]
                              for name, h in (("X", hx), ("Y1", h1), ("Y2", h2), ("Z", hz))}}


def kunneth_check(G: Digraph, H: Digraph, maxdim: int = 3) -> dict:
    bg = betti_numbers(G, maxdim, Q)
    bh = betti_numbers(H, maxdim, Q)
    prod = cartesian_product(G, H)
    bp = betti_numbers(prod, maxdim, Q)
    conv = [sum(bg[i] * bh[k - i] for i in range(k + 1)) for k in range(maxdim + 1)]
    return {"holds": bp == conv, "product": bp, "convolution": conv, "left": bg, "right": bh}
