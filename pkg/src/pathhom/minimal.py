"""Minimal boundary-invariant paths: order, search, supports, structure."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator

from .chains import (
    Chain,
    ElemPath,
    _allowed_basis,
    boundary,
    delta_component,
    format_chain_text,
    is_allowed,
    is_regular,
    path_key,
    width,
)
from .digraph import Digraph, validate_digraph, vertex_key
from .errors import (
    DimMismatch,
    IndexOutOfRange,
    NoCommonEndpoints,
    NotOmegaMember,
    NoValidChoice,
    PathHomError,
    StructureViolation,
)
from .homology import homology, mv_pair_check
from .omega import build_complex, membership

__all__ = [
    "width",
    "chain_leq",
    "chain_lt",
    "is_minimal",
    "minimal_witness",
    "minimal_decompose",
    "enumerate_minimal",
    "supp",
    "DistanceProfile",
    "distance_profile",
    "edge_distance_violations",
    "completions",
    "StructureReport",
    "structure_decompose",
    "acyclic_certify",
    "split_at",
    "augment_split",
]


def _same_dim(u: Chain, v: Chain):
    if u and v and u.dim != v.dim:
        raise DimMismatch(f"dimensions {u.dim} and {v.dim} differ")


def chain_leq(u: Chain, v: Chain) -> bool:
    """The partial order: each coefficient of u lies between 0 and that of v."""
    _same_dim(u, v)
    for p in set(u.coeffs()) | set(v.coeffs()):
        a, b = u[p], v[p]
        if abs(a) > abs(b) or abs(a - b) > abs(b):
            return False
    return width(u) <= width(v)


def chain_lt(u: Chain, v: Chain) -> bool:
    return chain_leq(u, v) and u != v


# -- constrained search over coefficient boxes -------------------------------

def _bad_face_constraints(G: Digraph, paths: list[ElemPath]) -> list[list[tuple[int, int]]]:
    """Per path, the (constraint id, sign) of each non-allowed face.

    A chain on ``paths`` lies in Omega exactly when every constraint sums to 0.
    """
    index: dict[ElemPath, int] = {}
    out = []
    for p in paths:
        row = []
        for j in range(1, len(p) - 1):
            if (p[j - 1], p[j + 1]) not in G.edges:
                face = p[:j] + p[j + 1:]
                row.append((index.setdefault(face, len(index)), -1 if j % 2 else 1))
        out.append(row)
    return out


def _box_solutions(cons: list[list[tuple[int, int]]], domains: list[list[int]],
                   first_positive: bool = False) -> Iterator[tuple[int, ...]]:
    """All nonzero coefficient vectors in the box satisfying the constraints."""
    k = len(domains)
    last: dict[int, int] = {}
    for i, row in enumerate(cons):
        for c, _ in row:
            last[c] = i
    closing = [[(c, s) for c, s in row if last[c] == i] for i, row in enumerate(cons)]
    sums: dict[int, int] = defaultdict(int)
    vec = [0] * k

    def rec(i: int, started: bool):
        if i == k:
            if started:
                yield tuple(vec)
            return
        dom = domains[i]
        if closing[i]:
            # the value is forced by any constraint closed here
            c, s = closing[i][0]
            own = sum(s2 for c2, s2 in cons[i] if c2 == c)
            need = -sums[c]
            if own == 0 or need % own:
                return
            forced = need // own
            dom = [forced] if forced in dom else []
        for x in dom:
            if first_positive and not started and x < 0:
                continue
            ok = True
            for c, s in cons[i]:
                sums[c] += s * x
            for c, _ in closing[i]:
                if sums[c] != 0:
                    ok = False
                    break
            if ok:
                vec[i] = x
                yield from rec(i + 1, started or x != 0)
                vec[i] = 0
            for c, s in cons[i]:
                sums[c] -= s * x

    yield from rec(0, False)


def _interval(c: int) -> list[int]:
    return list(range(0, c + 1)) if c >= 0 else list(range(c, 1))


def _check_member(G: Digraph, P: Chain):
    if not P:
        raise NotOmegaMember("the zero chain is not a path")
    for p in P.coeffs():
        if not all(v in G for v in p):
            raise NotOmegaMember(f"path {' '.join(p)} leaves the digraph")
    if not membership(G, P):
        raise NotOmegaMember(f"chain is not boundary-invariant: {format_chain_text(P)}")


def minimal_witness(G: Digraph, P: Chain) -> Chain | None:
    """A strictly smaller boundary-invariant chain below P, or None.

    The witness returned has the least width, ties going to the one whose
    nonzero terms come earliest; it is therefore itself minimal.
    """
    _check_member(G, P)
    items = P.items()
    paths = [p for p, _ in items]
    coeffs = [int(c) for _, c in items]
    cons = _bad_face_constraints(G, paths)
    domains = [_interval(c) for c in coeffs]
    full = width(P)
    best = None
    for d in _box_solutions(cons, domains):
        w = sum(abs(x) for x in d)
        if w >= full:
            continue
        key = (w, [i for i, x in enumerate(d) if x], [abs(x) for x in d])
        if best is None or key < best[0]:
            best = (key, d)
    if best is None:
        return None
    return Chain(P.dim, [(p, x) for p, x in zip(paths, best[1]) if x])


def is_minimal(G: Digraph, P: Chain) -> tuple[bool, Chain | None]:
    """``(True, None)`` when P is minimal, else ``(False, witness)``."""
    w = minimal_witness(G, P)
    return (w is None, w)


def minimal_decompose(G: Digraph, c: Chain) -> list[Chain]:
    """Peel minimal chains off ``c`` until nothing is left."""
    _check_member(G, c)
    out = []
    rest = c
    while rest:
        w = minimal_witness(G, rest)
        if w is None:
            out.append(rest)
            break
        out.append(w)
        rest = rest - w
    return out


def _components(cons: list[list[tuple[int, int]]]) -> list[list[int]]:
    """Group terms linked through shared constraints.

    The support of a minimal chain is connected in this sense: otherwise its
    restriction to one part would be a smaller boundary-invariant chain.
    """
    parent = list(range(len(cons)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for i, row in enumerate(cons):
        for c, _ in row:
            if c in owner:
                parent[find(i)] = find(owner[c])
            else:
                owner[c] = i
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(len(cons)):
        groups[find(i)].append(i)
    return sorted(groups.values())


def _canonical(c: Chain) -> Chain:
    items = c.items()
    return -c if items and items[0][1] < 0 else c


def enumerate_minimal(G: Digraph, n: int, S: str | None = None, E: str | None = None,
                      coeff_bound: int = 1) -> list[Chain]:
    """Minimal chains of length n, one per sign class.

    Coefficients range over ``-coeff_bound..coeff_bound``; the default of 1
    relies on minimal paths having unit coefficients, and a bound of 2 is a
    slower mode for testing that restriction.
    """
    if n < 0:
        raise IndexOutOfRange("dimension must be nonnegative")
    strata: dict[tuple[str, str], list[ElemPath]] = defaultdict(list)
    for p in _allowed_basis(G, n):
        if (S is None or p[0] == S) and (E is None or p[-1] == E):
            strata[(p[0], p[-1])].append(p)
    found: list[Chain] = []
    values = list(range(-coeff_bound, coeff_bound + 1))
    for key in sorted(strata, key=lambda k: (vertex_key(k[0]), vertex_key(k[1]))):
        paths = strata[key]
        cons = _bad_face_constraints(G, paths)
        for comp in _components(cons):
            sub_paths = [paths[i] for i in comp]
            sub_cons = _bad_face_constraints(G, sub_paths)
            for d in _box_solutions(sub_cons, [values] * len(comp), first_positive=True):
                cand = Chain(n, [(p, x) for p, x in zip(sub_paths, d) if x])
                if minimal_witness(G, cand) is None:
                    found.append(_canonical(cand))
    found.sort(key=lambda c: [(path_key(p), x) for p, x in c.items()])
    return found


# -- supports and distance functions ------------------------------------------

def supp(P: Chain, name: str = "supp") -> Digraph:
    """The least digraph on which P is an allowed boundary-invariant chain."""
    edges = set()
    for p in P.coeffs():
        edges.update(zip(p, p[1:]))
    if P.dim >= 1:
        for q in boundary(P).coeffs():
            edges.update(zip(q, q[1:]))
    return validate_digraph(P.vertices(), edges, name=name)


@dataclass
class DistanceProfile:
    start: str
    end: str
    n: int
    d_S: dict[str, int]
    d_E: dict[str, int]

    def level_S(self, k: int) -> list[str]:
        return sorted((v for v, d in self.d_S.items() if d == k), key=vertex_key)

    def level_E(self, k: int) -> list[str]:
        return sorted((v for v, d in self.d_E.items() if d == k), key=vertex_key)

    @property
    def S1(self) -> list[str]:
        return self.level_S(1)

    @property
    def E1(self) -> list[str]:
        return self.level_E(1)

    @property
    def E2(self) -> list[str]:
        return self.level_E(2)

    def to_json(self) -> dict:
        order = sorted(self.d_S, key=vertex_key)
        return {"start": self.start, "end": self.end, "n": self.n,
                "d_S": {v: self.d_S[v] for v in order}, "d_E": {v: self.d_E[v] for v in order}}


def distance_profile(P: Chain) -> DistanceProfile:
    paths = list(P.coeffs())
    if not paths:
        raise NoCommonEndpoints("the zero chain has no endpoints")
    starts = {p[0] for p in paths}
    ends = {p[-1] for p in paths}
    if len(starts) != 1 or len(ends) != 1:
        raise NoCommonEndpoints(f"starts {sorted(starts)}, ends {sorted(ends)}")
    n = P.dim
    d_S: dict[str, int] = {}
    d_E: dict[str, int] = {}
    for p in paths:
        for i, v in enumerate(p):
            d_S[v] = min(d_S.get(v, n), i)
            d_E[v] = min(d_E.get(v, n), n - i)
    return DistanceProfile(starts.pop(), ends.pop(), n, d_S, d_E)


def edge_distance_violations(P: Chain) -> list[dict]:
    """Edges of supp(P) whose endpoints differ by more than 2 in d_S or d_E."""
    prof = distance_profile(P)
    bad = []
    for u, v in supp(P).sorted_edges():
        ds = abs(prof.d_S[u] - prof.d_S[v])
        de = abs(prof.d_E[u] - prof.d_E[v])
        if ds > 2 or de > 2:
            bad.append({"edge": [u, v], "d_S": [prof.d_S[u], prof.d_S[v]],
                        "d_E": [prof.d_E[u], prof.d_E[v]]})
    return bad


def per_term_jump_edges(P: Chain) -> list[tuple[str, str]]:
    """Edges of supp(P) joining vertices whose term positions differ by more
    than 2 in every term containing both (logged, never asserted)."""
    pos = defaultdict(dict)
    for t, p in enumerate(P.coeffs()):
        for i, v in enumerate(p):
            pos[v][t] = i
    out = []
    for u, v in supp(P).sorted_edges():
        shared = set(pos[u]) & set(pos[v])
        if shared and all(abs(pos[u][t] - pos[v][t]) > 2 for t in shared):
            out.append((u, v))
    return out


# -- completions -------------------------------------------------------------

def completions(G: Digraph, u: Chain, width_bound: int | None = None,
                coeff_bound: int = 1) -> dict:
    """Minimal boundary-invariant completions of an allowed chain.

    Candidates are positive multiples of minimal paths dominating ``u``,
    searched within the width bound; those not strictly above another
    candidate are kept.
    """
    for p in u.coeffs():
        if not (all(v in G for v in p) and is_regular(p) and is_allowed(G, p)):
            raise NotOmegaMember(f"{' '.join(p)} is not an allowed regular path")
    if not u:
        return {"completions": [], "width_bound": width_bound or 0, "bound_hit": False}
    if width_bound is None:
        width_bound = 4 * int(width(u))
    strata = sorted({(p[0], p[-1]) for p in u.coeffs()})
    cands: list[Chain] = []
    bound_hit = False
    if len(strata) == 1:
        S, E = strata[0]
        for M in enumerate_minimal(G, u.dim, S, E, coeff_bound):
            for sign in (1, -1):
                Ms = M * sign
                if any(Ms[p] == 0 or (Ms[p] > 0) != (x > 0) for p, x in u.coeffs().items()):
                    continue
                k = max(-(-abs(x) // abs(Ms[p])) for p, x in u.coeffs().items())
                cand = Ms * k
                if not chain_leq(u, cand):
                    continue
                if width(cand) > width_bound:
                    bound_hit = True
                    continue
                cands.append(cand)
    keep = [c for c in cands if not any(chain_lt(d, c) for d in cands)]
    keep.sort(key=lambda c: [(path_key(p), x) for p, x in c.items()])
    return {"completions": keep, "width_bound": width_bound, "bound_hit": bound_hit}


# -- structure decomposition ----------------------------------------------------

@dataclass
class StructureReport:
    start: str
    end: str
    n: int
    family_A: dict[str, Chain]
    family_B: dict[str, Chain]
    family_C: Chain | None
    certificates: dict = field(default_factory=dict)
    part2: dict = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def total(self) -> Chain:
        acc = Chain.zero(self.n - 1)
        for c in list(self.family_A.values()) + list(self.family_B.values()):
            acc = acc + c
        if self.family_C is not None:
            acc = acc + self.family_C
        return acc

    def to_json(self) -> dict:
        def fam(d, tag):
            return [{"key": f"{self.start}->{k}" if tag == "A" else f"{k}->{self.end}",
                     "vertex": k, "chain": format_chain_text(c),
                     **self.certificates.get((tag, k), {})} for k, c in d.items()]
        return {"start": self.start, "end": self.end, "n": self.n,
                "family_A": fam(self.family_A, "A"),
                "family_B": fam(self.family_B, "B"),
                "family_C": (None if self.family_C is None else
                             {"key": f"{self.start}->{self.end}",
                              "chain": format_chain_text(self.family_C),
                              **self.certificates.get(("C", None), {})}),
                "I_P": 0 if self.family_C is None else 1,
                "two_faces_unique": self.certificates.get("two_faces_unique"),
                "part2": {str(k): v for k, v in self.part2.items()},
                "violations": list(self.violations)}


def _unique_up_to_sign(H: Digraph, member: Chain, S: str, E: str) -> tuple[bool, bool, int]:
    mins = enumerate_minimal(H, member.dim, S, E)
    is_min = _canonical(member) in mins
    return is_min, len(mins) == 1 and is_min, len(mins)


def structure_decompose(G: Digraph, P: Chain, strict: bool = True,
                        with_part2: bool = False) -> StructureReport:
    """Split the boundary of a minimal path into its three families and
    certify the properties each family is claimed to have."""
    ok, witness = is_minimal(G, P)
    if not ok:
        raise StructureViolation("input is not minimal", format_chain_text(witness))
    if P.dim < 2:
        raise IndexOutOfRange("structure decomposition needs length at least 2")
    try:
        prof = distance_profile(P)
    except NoCommonEndpoints as exc:
        raise StructureViolation(f"minimal path without common endpoints: {exc}") from exc
    n, S, E = P.dim, prof.start, prof.end
    H = supp(P)
    violations = []
    if any(abs(c) != 1 for c in P.coeffs().values()):
        violations.append("coefficient other than +1/-1")
    last = delta_component(P, n)
    first = delta_component(P, 0)
    fam_A: dict[str, list] = defaultdict(list)
    for q, c in last.coeffs().items():
        fam_A[q[-1]].append((q, c))
    fam_B: dict[str, list] = defaultdict(list)
    for q, c in first.coeffs().items():
        fam_B[q[0]].append((q, c))
    family_A = {a: Chain(n - 1, fam_A[a]) for a in sorted(fam_A, key=vertex_key)}
    family_B = {b: Chain(n - 1, fam_B[b]) for b in sorted(fam_B, key=vertex_key)}
    inner = Chain.zero(n - 1)
    for i in range(1, n):
        inner = inner + delta_component(P, i)
    family_C = inner if inner else None
    certs: dict = {}
    if list(family_A) != prof.E1:
        violations.append(f"family A keys {list(family_A)} differ from E_1 {prof.E1}")
    if list(family_B) != prof.S1:
        violations.append(f"family B keys {list(family_B)} differ from S_1 {prof.S1}")
    for tag, fam in (("A", family_A), ("B", family_B)):
        for k, c in fam.items():
            s, e = (S, k) if tag == "A" else (k, E)
            m, u, count = _unique_up_to_sign(H, c, s, e)
            certs[(tag, k)] = {"minimal": m, "unique": u, "count": count}
            if not m:
                violations.append(f"family {tag} member at {k} is not minimal")
            elif not u:
                violations.append(f"family {tag} member at {k} is not unique up to sign")
    if family_C is not None:
        m, u, count = _unique_up_to_sign(H, family_C, S, E)
        certs[("C", None)] = {"minimal": m, "unique": u, "count": count}
        if not m:
            violations.append("family C is not a single minimal path")
        if count > 1:
            violations.append(f"{count} minimal paths from S to E of length n-1")
    else:
        certs[("C", None)] = {"count": len(enumerate_minimal(H, n - 1, S, E))}
        if certs[("C", None)]["count"] > 1:
            violations.append("more than one minimal path from S to E of length n-1")
    if boundary(P) != (sum(family_A.values(), Chain.zero(n - 1))
                                         + sum(family_B.values(), Chain.zero(n - 1))
                                         + (family_C or Chain.zero(n - 1))):
        violations.append("families do not sum to the boundary")
    per_pair: dict[tuple[str, str], int] = defaultdict(int)
    for M in enumerate_minimal(H, 2):
        items = M.paths()
        per_pair[(items[0][0], items[0][-1])] += 1
    dup = sorted(k for k, v in per_pair.items() if v > 1)
    certs["two_faces_unique"] = not dup
    if dup:
        violations.append(f"several minimal 2-paths between {dup}")
    part2 = {}
    if with_part2:
        for v in sorted(prof.d_E, key=vertex_key):
            k = prof.d_E[v]
            if v in (S, E):
                continue
            part2[v] = {
                "k": k,
                "front": len(enumerate_minimal(H, n - k, S, v)),
                "back": len(enumerate_minimal(H, k, v, E)),
                "short_back": len(enumerate_minimal(H, k - 1, v, E)) if k >= 1 else 0,
            }
    report = StructureReport(S, E, n, family_A, family_B, family_C, certs, part2, violations)
    if strict and violations:
        raise StructureViolation("; ".join(violations), report.to_json())
    return report


def acyclic_certify(G: Digraph, P: Chain) -> dict:
    """Integer reduced homology of supp(P), flagged when nonzero."""
    ok, witness = is_minimal(G, P)
    if not ok:
        raise StructureViolation("input is not minimal", format_chain_text(witness))
    H = supp(P)
    res = homology(build_complex(H, reduced=True))
    return {"acyclic": res.is_trivial(), "homology": res, "support": H}


# -- augmentation and splitting -------------------------------------------------

@dataclass
class SplitRecord:
    augmented: Digraph
    P1: Chain
    P2: Chain
    Y1: Digraph
    Y2: Digraph
    Z: Digraph
    alpha: str | None
    added_edges: list[tuple[str, str]]
    checks: dict


def split_at(P: Chain, alpha: str, maxdim: int | None = None) -> tuple[SplitRecord | None, str | None]:
    """Augment supp(P) for one choice of alpha in E_1 and test the split.

    Returns the record and None on success, or None and the reason.
    """
    H = supp(P)
    prof = distance_profile(P)
    E, E1 = prof.end, prof.E1
    if alpha not in E1:
        raise IndexOutOfRange(f"{alpha} is not in E_1 = {E1}")
    E2 = set(prof.E2)
    P1 = P.restrict(lambda p: p[-2] == alpha)
    P2 = P - P1
    add = sorted(((g, E) for g in P1.vertices() if g in E2 and not H.has_edge(g, E)),
                 key=lambda e: vertex_key(e[0]))
    X = H.with_edges(add, name="augmented")
    Y1, Y2 = supp(P1, "Y1"), supp(P2, "Y2")
    checks: dict = {"trivial": False, "alpha": alpha}
    try:
        checks["P1_minimal"] = is_minimal(X, P1)[0]
        checks["P2_minimal"] = is_minimal(X, P2)[0]
    except NotOmegaMember:
        return None, "a piece is not boundary-invariant"
    checks["E1_shrinks"] = len(set(E1) & P2.vertices()) == len(E1) - 1
    checks["covers"] = (set(Y1.vertices) | set(Y2.vertices) == set(X.vertices)
                        and Y1.edges | Y2.edges == X.edges)
    if not checks["covers"]:
        return None, "pieces do not cover"
    try:
        checks["mv_pair"] = mv_pair_check(X, Y1, Y2, maxdim)
    except PathHomError as exc:
        return None, f"not a Mayer-Vietoris pair: {exc}"
    Z = validate_digraph(set(Y1.vertices) & set(Y2.vertices), Y1.edges & Y2.edges, name="Z")
    return SplitRecord(X, P1, P2, Y1, Y2, Z, alpha, add, checks), None


def augment_split(P: Chain, G: Digraph | None = None, maxdim: int | None = None) -> SplitRecord:
    """Embed supp(P) in a larger digraph where P splits into two minimal
    paths whose supports form a Mayer-Vietoris pair.

    Candidates alpha in E_1 are tried in natural vertex order and the first
    one meeting every requirement is used.
    """
    base = supp(P) if G is None else G
    ok, witness = is_minimal(base, P)
    if not ok:
        raise StructureViolation("input is not minimal", format_chain_text(witness))
    H = supp(P)
    prof = distance_profile(P)
    n = P.dim
    empty = validate_digraph([], [], name="empty")
    if n < 2 or len(prof.E1) < 2:
        return SplitRecord(H, P, Chain.zero(n), H, empty, empty, None, [],
                           {"trivial": True})
    tried = []
    for alpha in prof.E1:
        rec, reason = split_at(P, alpha, maxdim)
        if rec is not None:
            c = rec.checks
            if not (c["P1_minimal"] and c["P2_minimal"]):
                reason = "a piece is not minimal"
            elif not c["E1_shrinks"]:
                reason = "E_1 did not shrink"
            else:
                c["rejected"] = tried
                return rec
        tried.append({"alpha": alpha, "reason": reason})
    raise NoValidChoice("no vertex of E_1 gives a valid split", tried)
