"""Seeded random search for counterexamples to the minimal-path theorems.

Each failure is shrunk by deleting vertices and then edges while the same
check keeps failing, so the reported digraph is locally smallest.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .chains import format_chain_text
from .digraph import Digraph, format_digraph_text, induced_subgraph, validate_digraph
from .errors import NoCommonEndpoints, StructureViolation
from .homology import homology
from .minimal import (
    distance_profile,
    edge_distance_violations,
    enumerate_minimal,
    structure_decompose,
    supp,
)
from .omega import build_complex

__all__ = ["random_digraph", "FuzzReport", "structure_violations", "acyclic_violations",
           "shrink", "fuzz"]


def random_digraph(rng: random.Random, max_vertices: int = 7, p: float = 0.3,
                   name: str = "fuzz") -> Digraph:
    n = rng.randint(1, max_vertices)
    verts = [str(i) for i in range(n)]
    edges = [(u, v) for u in verts for v in verts if u != v and rng.random() < p]
    return validate_digraph(verts, edges, name=name)


_acyclic_cache: dict[frozenset, bool] = {}


def _support_acyclic(H: Digraph) -> bool:
    key = H.edges | frozenset((v, v) for v in H.vertices)
    if key not in _acyclic_cache:
        _acyclic_cache[key] = homology(build_complex(H, reduced=True)).is_trivial()
    return _acyclic_cache[key]


def acyclic_violations(G: Digraph, maxdim: int = 3) -> list[dict]:
    out = []
    for n in range(1, maxdim + 1):
        for P in enumerate_minimal(G, n):
            if not _support_acyclic(supp(P)):
                out.append({"check": "supp_acyclic", "chain": format_chain_text(P)})
    return out


def structure_violations(G: Digraph, maxdim: int = 3, wide: bool = False) -> list[dict]:
    """Every theorem check on every minimal path of length 1..maxdim.

    With ``wide`` the enumeration admits coefficients up to 2 in absolute
    value, which tests the unit-coefficient restriction itself.
    """
    out = []

    def flag(check, P, detail=None):
        out.append({"check": check, "chain": format_chain_text(P), "detail": detail})

    for n in range(1, maxdim + 1):
        for P in enumerate_minimal(G, n, coeff_bound=2 if wide else 1):
            if any(abs(c) != 1 for c in P.coeffs().values()):
                flag("unit_coefficients", P)
            try:
                distance_profile(P)
            except NoCommonEndpoints as exc:
                flag("unique_endpoints", P, str(exc))
                continue
            if not _support_acyclic(supp(P)):
                flag("supp_acyclic", P)
            bad = edge_distance_violations(P)
            if bad:
                flag("edge_distance_bound", P, [list(e) for e in bad])
            if n >= 2:
                try:
                    rep = structure_decompose(G, P, strict=False)
                except StructureViolation as exc:
                    flag("structure", P, str(exc))
                    continue
                for v in rep.violations:
                    flag("structure", P, v)
    return out


def shrink(G: Digraph, failing: Callable[[Digraph], bool]) -> Digraph:
    """Delete vertices, then edges, while ``failing`` stays true."""
    changed = True
    while changed:
        changed = False
        for v in sorted(G.vertices):
            H = induced_subgraph(G, set(G.vertices) - {v}, name=G.name)
            if H.vertices and failing(H):
                G, changed = H, True
                break
        if changed:
            continue
        for e in G.sorted_edges():
            H = validate_digraph(G.vertices, [f for f in G.sorted_edges() if f != e], name=G.name)
            if failing(H):
                G, changed = H, True
                break
    return G


@dataclass
class FuzzReport:
    seed: int
    graphs: int
    minimal_paths: int = 0
    seconds: float = 0.0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {"seed": self.seed, "graphs": self.graphs, "minimal_paths": self.minimal_paths,
                "seconds": round(self.seconds, 2), "ok": self.ok,
                "counterexamples": self.counterexamples}


def fuzz(kind: str = "structure", graphs: int = 1000, seed: int = 0, max_vertices: int = 7,
         p: float = 0.3, maxdim: int = 3, wide: bool = False,
         stop_after: int = 5) -> FuzzReport:
    """Run ``graphs`` random trials of the structure or acyclicity checks."""
    if kind == "structure":
        check = lambda H: structure_violations(H, maxdim, wide)  # noqa: E731
    elif kind == "acyclic":
        check = lambda H: acyclic_violations(H, maxdim)  # noqa: E731
    else:
        raise ValueError(f"unknown fuzz kind {kind!r}")
    rng = random.Random(seed)
    report = FuzzReport(seed, graphs)
    t0 = time.perf_counter()
    for trial in range(graphs):
        G = random_digraph(rng, max_vertices, p, name=f"fuzz{seed}_{trial}")
        report.minimal_paths += sum(len(enumerate_minimal(G, n)) for n in range(1, maxdim + 1))
        found = check(G)
        if found:
            kinds = {f["check"] for f in found}
            small = shrink(G, lambda H: bool(kinds & {f["check"] for f in check(H)}))
            report.counterexamples.append({"trial": trial, "violations": check(small),
                                           "digraph": format_digraph_text(small)})
            if len(report.counterexamples) >= stop_after:
                break
    report.seconds = time.perf_counter() - t0
    return report
