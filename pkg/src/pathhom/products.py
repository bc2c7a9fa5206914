"""Cross and star products, cup product, diagonals, and the chain homotopy
between the two diagonal approximations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .chains import (
    Chain,
    Form,
    _allowed_basis,
    boundary,
    format_chain_text,
    pair,
)
from .digraph import Digraph, cartesian_product, pair_vertex
from .errors import NotOmegaMember, SolveFailure
from .linalg import RationalEchelon, integer_left_kernel
from .minimal import enumerate_minimal, minimal_decompose, supp
from .omega import build_complex, membership, omega_layer

__all__ = [
    "staircases",
    "cross_product",
    "star_product",
    "cup",
    "cup_via_diagonal",
    "diagonal",
    "diagonal_slice",
    "box_square",
    "GradedMapF",
    "build_chain_homotopy",
    "verify_chain_homotopy",
    "cohomology_representatives",
    "lift_functional",
    "skew_check",
]


@lru_cache(maxsize=None)
def staircases(p: int, q: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Lattice staircases from (0,0) to (p,q) with their signs.

    Each staircase is the tuple of step directions (0 horizontal, 1 vertical)
    paired with (-1)^L, L being the sum over horizontal steps of the height
    at which the step is taken.
    """
    out = []
    for vert in combinations(range(p + q), q):
        steps = [0] * (p + q)
        for k in vert:
            steps[k] = 1
        height, L = 0, 0
        for s in steps:
            if s:
                height += 1
            else:
                L += height
        out.append((tuple(steps), -1 if L % 2 else 1))
    return tuple(out)


def _cross_paths(x: tuple, y: tuple):
    p, q = len(x) - 1, len(y) - 1
    for steps, sign in staircases(p, q):
        i = j = 0
        verts = [pair_vertex(x[0], y[0])]
        for s in steps:
            if s:
                j += 1
            else:
                i += 1
            verts.append(pair_vertex(x[i], y[j]))
        yield tuple(verts), sign


def cross_product(u: Chain, v: Chain) -> Chain:
    out: dict = {}
    for x, a in u.coeffs().items():
        for y, b in v.coeffs().items():
            for z, s in _cross_paths(x, y):
                out[z] = out.get(z, 0) + s * a * b
    return Chain._raw(u.dim + v.dim, out)


def star_product(alpha: Form, beta: Form) -> Form:
    out: dict = {}
    for x, a in alpha.coeffs().items():
        for y, b in beta.coeffs().items():
            z = tuple(pair_vertex(i, y[0]) for i in x) + \
                tuple(pair_vertex(x[-1], j) for j in y[1:])
            out[z] = out.get(z, 0) + a * b
    return Form._raw(alpha.dim + beta.dim, out)


def cup(alpha: Form, beta: Form) -> Form:
    """Concatenation of forms at a shared vertex; irregular results vanish."""
    out: dict = {}
    for x, a in alpha.coeffs().items():
        for y, b in beta.coeffs().items():
            if x[-1] != y[0]:
                continue
            z = x + y[1:]
            if len(set(z)) != len(z):
                continue
            out[z] = out.get(z, 0) + a * b
    return Form._raw(alpha.dim + beta.dim, out)


def diagonal_slice(u: Chain, i: int, transposed: bool = False) -> Chain:
    n = u.dim
    acc = Chain.zero(n)
    for path, c in u.coeffs().items():
        head = Chain.elementary(path[:i + 1])
        tail = Chain.elementary(path[i:])
        if transposed:
            term = cross_product(tail, head) * ((-1) ** ((i * (n - i)) % 2))
        else:
            term = cross_product(head, tail)
        acc = acc + term * c
    return acc


@lru_cache(maxsize=64)
def box_square(G: Digraph) -> Digraph:
    return cartesian_product(G, G)


def diagonal(u: Chain, transposed: bool = False, G: Digraph | None = None) -> Chain:
    """The diagonal approximation, or its composite with the transposition.

    With ``G`` given, u is checked to lie in Omega(G) and the result in
    Omega(G box G).
    """
    if G is not None and u and not membership(G, u):
        raise NotOmegaMember(f"chain is not boundary-invariant: {format_chain_text(u)}")
    acc = Chain.zero(u.dim)
    for i in range(u.dim + 1):
        acc = acc + diagonal_slice(u, i, transposed)
    if G is not None and acc and not membership(box_square(G), acc):
        raise NotOmegaMember("diagonal left Omega of the product")
    return acc


def cup_via_diagonal(alpha: Form, beta: Form, u: Chain) -> Fraction:
    """(alpha star beta, diagonal(u)), which equals (alpha cup beta, u) on Omega."""
    return pair(star_product(alpha, beta), diagonal(u))


# -- chain homotopy between the diagonals ---------------------------------------

class _PathSolver:
    """Rational solver for ``sum x_k g_k = target`` over chain generators."""

    def __init__(self):
        self.index: dict = {}
        self.ech = RationalEchelon(track=True)

    def _vec(self, c: Chain) -> dict:
        return {self.index.setdefault(p, len(self.index)): x for p, x in c.coeffs().items()}

    def add(self, c: Chain, tag) -> bool:
        return self.ech.add(self._vec(c), tag)

    def solve(self, c: Chain) -> dict | None:
        for p in c.coeffs():
            if p not in self.index:
                return None
        return self.ech.solve(self._vec(c))


@dataclass
class GradedMapF:
    """F on a basis of each Omega_n(G) together with the chosen bases."""

    digraph: Digraph
    base_edge: tuple[str, str] | None
    maxdim: int
    bases: dict[int, list[Chain]] = field(default_factory=dict)
    images: dict[int, list[Chain]] = field(default_factory=dict)
    _solvers: dict = field(default_factory=dict, repr=False)

    def solver(self, n: int) -> _PathSolver:
        if n not in self._solvers:
            s = _PathSolver()
            for k, b in enumerate(self.bases[n]):
                s.add(b, k)
            self._solvers[n] = s
        return self._solvers[n]

    def coordinates(self, n: int, c: Chain) -> dict:
        if not c:
            return {}
        sol = self.solver(n).solve(c)
        if sol is None:
            raise NotOmegaMember(f"chain outside the span of the degree-{n} basis")
        return sol

    def apply(self, n: int, c: Chain) -> Chain:
        acc = Chain.zero(n + 1)
        for k, x in self.coordinates(n, c).items():
            acc = acc + self.images[n][k] * x
        return acc

    def dump(self) -> str:
        lines = [f"base_edge {' '.join(self.base_edge) if self.base_edge else '-'}"]
        for n in sorted(self.bases):
            lines.append(f"degree {n}")
            for b, img in zip(self.bases[n], self.images[n]):
                lines.append(f"u: {format_chain_text(b)}")
                lines.append(f"F: {format_chain_text(img) if img else '0'}")
        return "\n".join(lines) + "\n"


def _minimal_basis(G: Digraph, n: int) -> list[Chain]:
    """A rationally independent set of minimal paths spanning Omega_n(G)."""
    target = omega_layer(G, n).rank
    solver = _PathSolver()
    basis: list[Chain] = []
    for M in enumerate_minimal(G, n):
        if solver.add(M, len(basis)):
            basis.append(M)
        if len(basis) == target:
            return basis
    for b in omega_layer(G, n).basis:
        for M in minimal_decompose(G, b):
            if solver.add(M, len(basis)):
                basis.append(M)
    if len(basis) != target:
        raise SolveFailure(f"minimal paths do not span Omega_{n}", {"rank": len(basis)})
    return basis


def _defect(u: Chain, F: GradedMapF) -> Chain:
    """t Delta(u) - Delta(u) - F(boundary u)."""
    z = diagonal(u, transposed=True) - diagonal(u)
    if u.dim >= 1:
        z = z - F.apply(u.dim - 1, boundary(u))
    return z


def _solve_boundary(target: Chain, H: Digraph) -> Chain:
    """Some v on allowed paths of H with boundary(v) == target, over Q."""
    n = target.dim
    solver = _PathSolver()
    paths = _allowed_basis(H, n + 1)
    for k, p in enumerate(paths):
        solver.add(boundary(Chain.elementary(p)), k)
    sol = solver.solve(target)
    if sol is None:
        raise SolveFailure(f"no preimage in degree {n + 1}", format_chain_text(target))
    return Chain._raw(n + 1, {paths[k]: x for k, x in sol.items()})


def build_chain_homotopy(G: Digraph, maxdim: int = 3) -> GradedMapF:
    edges = G.sorted_edges()
    base = edges[0] if edges else None
    F = GradedMapF(G, base, maxdim)
    vertices = [Chain.elementary((v,)) for v in G.vertices]
    F.bases[0] = vertices
    if base is None:
        F.images[0] = [Chain.zero(1) for _ in vertices]
    else:
        a, b = Chain.elementary((base[0],)), Chain.elementary((base[1],))
        e = Chain.elementary(base)
        f0 = cross_product(a, e) - cross_product(b, e) + cross_product(e, b) - cross_product(e, a)
        F.images[0] = [f0 for _ in vertices]
    if maxdim >= 1:
        F.bases[1] = [Chain.elementary(e) for e in edges]
        F.images[1] = [cross_product(c, c) for c in F.bases[1]]
    for n in range(2, maxdim + 1):
        basis = _minimal_basis(G, n)
        F.bases[n] = basis
        images = []
        for u in basis:
            z = _defect(u, F)
            if boundary(z):
                raise SolveFailure("defect is not a cycle", format_chain_text(u))
            if not z:
                images.append(Chain.zero(n + 1))
                continue
            H = box_square(supp(u))
            images.append(_solve_boundary(z, H))
        F.images[n] = images
    return F


def verify_chain_homotopy(F: GradedMapF) -> bool:
    """Recompute boundary(F u) + F(boundary u) against the diagonal difference."""
    GG = box_square(F.digraph)
    for n in sorted(F.bases):
        for u, img in zip(F.bases[n], F.images[n]):
            if img and not membership(GG, img):
                return False
            lhs = boundary(img) if img else Chain.zero(n)
            if n >= 1:
                lhs = lhs + F.apply(n - 1, boundary(u))
            rhs = diagonal(u, transposed=True) - diagonal(u)
            if lhs != rhs:
                return False
    return True


# -- cohomology representatives and skew symmetry ----------------------------------

def _span_extension(base: list[dict], extra: list[dict]) -> list[int]:
    ech = RationalEchelon()
    for v in base:
        ech.add(v)
    return [k for k, v in enumerate(extra) if ech.add(v)]


def lift_functional(G: Digraph, n: int, values: list) -> Form:
    """A form on allowed n-paths taking the given values on the Omega_n basis.

    The basis is in Hermite form stratum by stratum, so the form can live on
    pivot paths and be found by back substitution.
    """
    layer = omega_layer(G, n)
    out: dict = {}
    for st in layer.strata.values():
        pivots = [next(j for j, x in enumerate(row) if x) for row in st.hnf]
        alpha: dict[int, Fraction] = {}
        for i in range(len(st.hnf) - 1, -1, -1):
            row = st.hnf[i]
            rest = sum((row[c] * alpha[c] for c in pivots[i + 1:] if c in alpha), Fraction(0))
            alpha[pivots[i]] = (Fraction(values[st.offset + i]) - rest) / row[pivots[i]]
        for c, x in alpha.items():
            if x:
                out[st.paths[c]] = x
    return Form._raw(n, out)


def _functional(G: Digraph, form: Form, n: int) -> list:
    return [pair(form, b) for b in omega_layer(G, n).basis]


def cohomology_representatives(G: Digraph, p: int) -> list[Form]:
    """Forms representing a basis of H^p(G; Q)."""
    cx = build_complex(G, p + 1)
    dim_p = omega_layer(G, p).rank
    if dim_p == 0:
        return []
    if p + 1 <= cx.maxdim and omega_layer(G, p + 1).rank:
        D_next = cx.boundary_matrices[p + 1]
        # functionals phi with D_next phi = 0
        cocycles = integer_left_kernel([list(col) for col in zip(*D_next)], len(D_next))
    else:
        cocycles = [[int(i == j) for j in range(dim_p)] for i in range(dim_p)]
    cobnd = []
    if p >= 1 and omega_layer(G, p - 1).rank:
        D = cx.boundary_matrices[p]
        cobnd = [{i: D[i][j] for i in range(dim_p) if D[i][j]} for j in range(len(D[0]))]
    keep = _span_extension(cobnd, [{j: x for j, x in enumerate(c) if x} for c in cocycles])
    return [lift_functional(G, p, cocycles[k]) for k in keep]


def _coboundary_witness(G: Digraph, omega: Form, n: int) -> Form | None:
    """gamma on A^{n-1} with (gamma, boundary b) = (omega, b) on the Omega_n basis."""
    basis = omega_layer(G, n).basis
    values = [pair(omega, b) for b in basis]
    if not any(values):
        return Form.zero(n - 1)
    if n == 0 or omega_layer(G, n - 1).rank == 0:
        return None
    cx = build_complex(G, n)
    D = cx.boundary_matrices[n]
    ech = RationalEchelon(track=True)
    for j in range(len(D[0])):
        ech.add({i: D[i][j] for i in range(len(D)) if D[i][j]}, j)
    sol = ech.solve({i: v for i, v in enumerate(values) if v})
    if sol is None:
        return None
    gamma_vals = [sol.get(j, 0) for j in range(len(D[0]))]
    gamma = lift_functional(G, n - 1, gamma_vals)
    for b, v in zip(basis, values):
        if pair(gamma, boundary(b)) != v:
            raise SolveFailure("coboundary witness does not reproduce the form")
    return gamma


def skew_check(G: Digraph, p: int, q: int) -> dict:
    """Check graded commutativity of cup on every pair of basis classes."""
    reps_p = cohomology_representatives(G, p)
    reps_q = reps_p if q == p else cohomology_representatives(G, q)
    n = p + q
    sign = -1 if (p * q) % 2 else 1
    pairs = []
    all_ok = True
    nontrivial = 0
    for i, phi in enumerate(reps_p):
        for j, psi in enumerate(reps_q):
            a, b = cup(phi, psi), cup(psi, phi)
            omega = a - b * sign if sign == 1 else a + b
            witness = _coboundary_witness(G, omega, n)
            ok = witness is not None
            all_ok &= ok
            if _coboundary_witness(G, a, n) is None:
                nontrivial += 1
            agree = all(pair(a, u) == cup_via_diagonal(phi, psi, u)
                        for u in omega_layer(G, n).basis)
            all_ok &= agree
            pairs.append({"phi": i, "psi": j, "coboundary": ok, "diagonal_route_agrees": agree,
                          "witness": None if witness is None else
                          (format_chain_text(witness) or "0")})
    return {"p": p, "q": q, "sign": sign, "holds": all_ok,
            "ranks": {"H^p": len(reps_p), "H^q": len(reps_q),
                      "H^p+q": len(cohomology_representatives(G, n))},
            "nontrivial_products": nontrivial, "pairs": pairs}
