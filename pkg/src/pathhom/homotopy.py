"""Digraph maps, line-digraph homotopies and deformation retractions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Mapping, Sequence

from .digraph import (
    Digraph,
    VertexMap,
    cartesian_product,
    induced_subgraph,
    line_digraph,
    pair_vertex,
    vertex_key,
)
from .errors import NotDigraphMap, ParseError, RetractFixityError, WitnessFailure
from .homology import homology
from .omega import build_complex

__all__ = [
    "HomotopyWitness",
    "check_digraph_map",
    "map_violations",
    "check_homotopy",
    "one_step_witness",
    "check_retraction",
    "retraction_from_values",
    "homotopy_equiv_report",
    "homotopy_from_rows",
    "one_step_chain",
    "retraction_equivalence",
    "find_one_step_retractions",
    "parse_vertex_map",
    "format_vertex_map",
    "parse_homotopy",
    "format_homotopy",
]


def _edge_or_equal(G: Digraph, u: str, v: str) -> bool:
    return u == v or G.has_edge(u, v)


def map_violations(m: VertexMap) -> list[tuple[str, str]]:
    return [(v, w) for v, w in m.source.sorted_edges()
            if not _edge_or_equal(m.target, m(v), m(w))]


def check_digraph_map(m: VertexMap) -> bool:
    """Every edge goes to an edge or collapses to a vertex."""
    return not map_violations(m)


@dataclass
class HomotopyWitness:
    """F(v, k) for k = 0..n along the line digraph described by ``line``."""

    f: VertexMap
    g: VertexMap
    line: str
    F: Mapping[tuple[str, int], str]

    @property
    def steps(self) -> int:
        return len(self.line)


def check_homotopy(w: HomotopyWitness) -> bool:
    G, H = w.f.source, w.f.target
    n = w.steps
    for v in G.vertices:
        if w.F.get((v, 0)) != w.f(v) or w.F.get((v, n)) != w.g(v):
            return False
        for k in range(n + 1):
            if w.F.get((v, k)) not in H:
                return False
    I = line_digraph(w.line)
    box = cartesian_product(G, I)
    assignment = {pair_vertex(v, str(k)): w.F[(v, k)] for v in G.vertices for k in range(n + 1)}
    return check_digraph_map(VertexMap(box, H, assignment))


def one_step_witness(f: VertexMap, g: VertexMap) -> HomotopyWitness | None:
    """The one-step homotopy between f and g, when f(x) -> g(x) or g(x) -> f(x)
    holds uniformly (edge or equality)."""
    H = f.target
    verts = f.source.vertices
    if all(_edge_or_equal(H, f(v), g(v)) for v in verts):
        line = "+"
    elif all(_edge_or_equal(H, g(v), f(v)) for v in verts):
        line = "-"
    else:
        return None
    F = {(v, 0): f(v) for v in verts}
    F.update({(v, 1): g(v) for v in verts})
    return HomotopyWitness(f, g, line, F)


def retraction_from_values(G: Digraph, values: Mapping[str, str]) -> tuple[VertexMap, Digraph]:
    """r from its non-identity values; the target is induced on the image."""
    assign = {v: values.get(v, v) for v in G.vertices}
    H = induced_subgraph(G, set(assign.values()), name=f"{G.name}_r")
    return VertexMap(G, H, assign), H


def _as_self_map(r: VertexMap, G: Digraph) -> VertexMap:
    return VertexMap(G, G, dict(r.assignment))


def check_retraction(G: Digraph, H: Digraph, r: VertexMap, mode: str = "one_step",
                     sequence: Sequence[VertexMap] | None = None) -> bool:
    """Deformation retraction test, by the one-step criterion or along a
    given sequence of self-maps f_0 = id, ..., f_n = i o r."""
    if not (set(H.vertices) <= set(G.vertices) and H.edges <= G.edges):
        raise RetractFixityError("target is not a subgraph")
    moved = [v for v in H.vertices if r(v) != v]
    if moved:
        raise RetractFixityError(f"retraction moves vertices of the target: {moved}")
    if not check_digraph_map(r):
        raise NotDigraphMap(0, map_violations(r))
    ir = _as_self_map(r, G)
    if mode == "one_step":
        return one_step_witness(VertexMap.identity(G), ir) is not None
    if mode != "sequence":
        raise ValueError(f"unknown mode {mode!r}")
    if not sequence:
        raise ValueError("sequence mode needs the maps f_0..f_n")
    if dict(sequence[0].assignment) != {v: v for v in G.vertices}:
        raise NotDigraphMap(0, "f_0 is not the identity")
    if dict(sequence[-1].assignment) != dict(ir.assignment):
        raise NotDigraphMap(len(sequence) - 1, "f_n is not i o r")
    for k, f in enumerate(sequence):
        if not check_digraph_map(f):
            raise NotDigraphMap(k, map_violations(f))
    return all(one_step_witness(a, b) is not None for a, b in zip(sequence, sequence[1:]))


def homotopy_from_rows(G: Digraph, H: Digraph, f: VertexMap, g: VertexMap, line: str,
                       rows: Sequence[Sequence[str]]) -> HomotopyWitness:
    """Build F from rows k = 1..n listing F(v, k) over G's vertices in order."""
    F = {(v, 0): f(v) for v in G.vertices}
    for k, row in enumerate(rows, start=1):
        if len(row) != len(G.vertices):
            raise ParseError(k, f"row {k} has {len(row)} entries")
        F.update({(v, k): x for v, x in zip(G.vertices, row)})
    return HomotopyWitness(f, g, line, F)


def one_step_chain(maps: Sequence[VertexMap]) -> list[HomotopyWitness]:
    """One-step homotopies joining consecutive maps of a sequence."""
    out = []
    for k, (a, b) in enumerate(zip(maps, maps[1:])):
        w = one_step_witness(a, b)
        if w is None:
            raise WitnessFailure(f"maps {k} and {k + 1} are not one step apart")
        out.append(w)
    return out


def homotopy_equiv_report(G: Digraph, H: Digraph, f: VertexMap, g: VertexMap,
                          gf_homotopy: HomotopyWitness | Sequence[HomotopyWitness],
                          fg_homotopy: HomotopyWitness | Sequence[HomotopyWitness]) -> dict:
    """Verify f: G -> H and g: H -> G are inverse up to homotopy, then
    compare integer homology.

    Each side may be a chain of homotopies joining the identity to the
    composite.
    """
    for name, m in (("f", f), ("g", g)):
        if not check_digraph_map(m):
            raise WitnessFailure(f"{name} is not a digraph map", map_violations(m))

    def chain_ok(ws, start: VertexMap, end: VertexMap) -> bool:
        ws = [ws] if isinstance(ws, HomotopyWitness) else list(ws)
        cur = dict(start.assignment)
        for w in ws:
            if dict(w.f.assignment) != cur or not check_homotopy(w):
                return False
            cur = dict(w.g.assignment)
        return cur == dict(end.assignment)

    gf = g.compose(f)
    fg = f.compose(g)
    if not chain_ok(gf_homotopy, VertexMap.identity(G), gf) and \
            not chain_ok(gf_homotopy, gf, VertexMap.identity(G)):
        raise WitnessFailure("g o f is not homotopic to the identity of G")
    if not chain_ok(fg_homotopy, VertexMap.identity(H), fg) and \
            not chain_ok(fg_homotopy, fg, VertexMap.identity(H)):
        raise WitnessFailure("f o g is not homotopic to the identity of H")
    hg = homology(build_complex(G, reduced=True))
    hh = homology(build_complex(H, reduced=True))
    top = min(max(hg.betti), max(hh.betti))
    same = all(hg.betti.get(n, 0) == hh.betti.get(n, 0)
               and hg.torsion.get(n, []) == hh.torsion.get(n, []) for n in range(-1, top + 1))
    extra = [n for n in set(hg.betti) ^ set(hh.betti)
             if (hg.betti.get(n, 0) or hh.betti.get(n, 0))]
    if not same or extra:
        raise WitnessFailure("homotopy equivalent digraphs with different homology",
                             {"G": hg.to_json(), "H": hh.to_json()})
    return {"equivalent": True, "homology_G": hg, "homology_H": hh}


def retraction_equivalence(G: Digraph, values: Mapping[str, str]) -> dict:
    """Homotopy-equivalence report for a one-step deformation retraction."""
    r, H = retraction_from_values(G, values)
    if not check_retraction(G, H, r):
        raise WitnessFailure("not a one-step deformation retraction", dict(values))
    inc = VertexMap(H, G, {v: v for v in H.vertices})
    ir = _as_self_map(r, G)
    w = one_step_witness(VertexMap.identity(G), ir)
    return homotopy_equiv_report(H, G, inc, r, [], [w]) | {"target": H}


def find_one_step_retractions(G: Digraph, max_vertices: int = 10,
                              proper_only: bool = True) -> list[VertexMap]:
    """All one-step deformation retractions onto induced subgraphs.

    A retraction is determined by its image set K and the values on the
    other vertices; each value must be an edge-or-equal neighbour on the
    same side for every vertex.
    """
    if len(G.vertices) > max_vertices:
        from .errors import TooLarge

        raise TooLarge(len(G.vertices), max_vertices)
    found = []
    verts = list(G.vertices)
    for direction in ("+", "-"):
        # candidate values for each vertex x: x itself or y with y->x ('+': r(x) -> x)
        cands = {}
        for x in verts:
            near = G.predecessors(x) if direction == "+" else G.successors(x)
            cands[x] = [x] + sorted(near, key=vertex_key)
        for choice in iproduct(*(cands[x] for x in verts)):
            assign = dict(zip(verts, choice))
            image = set(choice)
            if any(assign[y] != y for y in image):
                continue
            if proper_only and len(image) == len(verts):
                continue
            H = induced_subgraph(G, image, name=f"{G.name}_r")
            r = VertexMap(G, H, assign)
            if check_digraph_map(r) and r not in found:
                found.append(r)
    return found


# -- file formats ----------------------------------------------------------------

def parse_vertex_map(text: str, source: Digraph, target: Digraph) -> VertexMap:
    assign = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[1] != "=>":
            raise ParseError(lineno, raw)
        assign[parts[0]] = parts[2]
    for v in source.vertices:
        assign.setdefault(v, v)
    try:
        return VertexMap(source, target, assign)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from exc


def format_vertex_map(m: VertexMap) -> str:
    return "".join(f"{v} => {m(v)}\n" for v in m.source.vertices)


def parse_homotopy(text: str, G: Digraph, H: Digraph) -> HomotopyWitness:
    """``line <spec>`` then ``step k`` blocks of ``v => w`` lines, k = 0..n."""
    line = None
    blocks: dict[int, list[str]] = {}
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if parts[0] == "line" and len(parts) == 2:
            line = parts[1]
        elif parts[0] == "step" and len(parts) == 2 and parts[1].isdigit():
            cur = int(parts[1])
            blocks[cur] = []
        elif cur is not None:
            blocks[cur].append(s)
        else:
            raise ParseError(lineno, raw)
    if line is None or sorted(blocks) != list(range(len(line) + 1)):
        raise ParseError(0, "homotopy needs a line spec and steps 0..n")
    maps = [parse_vertex_map("\n".join(blocks[k]), G, H) for k in range(len(line) + 1)]
    F = {(v, k): m(v) for k, m in enumerate(maps) for v in G.vertices}
    return HomotopyWitness(maps[0], maps[-1], line, F)


def format_homotopy(w: HomotopyWitness) -> str:
    out = [f"line {w.line}"]
    for k in range(w.steps + 1):
        out.append(f"step {k}")
        out += [f"{v} => {w.F[(v, k)]}" for v in w.f.source.vertices]
    return "\n".join(out) + "\n"
