"""Finite simple digraphs: construction, products, closures, isomorphism."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import networkx as nx

from .errors import (
    DuplicateEdge,
    EmptyIdentifier,
    InvalidCharacter,
    ParseError,
    SelfLoop,
    TooLarge,
)

__all__ = [
    "Digraph",
    "VertexMap",
    "vertex_key",
    "validate_digraph",
    "cartesian_product",
    "strong_product",
    "line_digraph",
    "subgraph_combine",
    "induced_subgraph",
    "transitive_closure",
    "is_isomorphic",
    "pair_vertex",
    "split_pair",
    "parse_digraph_text",
    "format_digraph_text",
    "digraph_from_json",
    "digraph_to_json",
]

_WS = re.compile(r"\s")


@lru_cache(maxsize=None)
def split_pair(v: str) -> tuple[str, str] | None:
    """Split a product vertex ``"(u,w)"`` into ``(u, w)``; None for atoms."""
    if len(v) < 5 or v[0] != "(" or v[-1] != ")":
        return None
    depth = 0
    inner = v[1:-1]
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                return None
        elif ch == "," and depth == 0:
            return inner[:i], inner[i + 1:]
    return None


def pair_vertex(u: str, w: str) -> str:
    return f"({u},{w})"


@lru_cache(maxsize=None)
def vertex_key(v: str) -> tuple:
    """Natural sort key: integers numerically, then names, then pairs."""
    pair = split_pair(v)
    if pair is not None:
        return (2, vertex_key(pair[0]), vertex_key(pair[1]))
    if v.isdigit():
        return (0, int(v), v)
    return (1, 0, v)


@dataclass(frozen=True)
class Digraph:
    """An immutable finite simple digraph.

    Equality compares vertices and edges only; ``name`` is a label.
    """

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    name: str = field(default="G", compare=False)
    _succ: Mapping[str, frozenset[str]] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )
    _pred: Mapping[str, frozenset[str]] = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        succ: dict[str, set[str]] = {v: set() for v in self.vertices}
        pred: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, w in self.edges:
            succ[u].add(w)
            pred[w].add(u)
        object.__setattr__(self, "_succ", {v: frozenset(s) for v, s in succ.items()})
        object.__setattr__(self, "_pred", {v: frozenset(s) for v, s in pred.items()})

    def has_edge(self, u: str, w: str) -> bool:
        return (u, w) in self.edges

    def successors(self, v: str) -> frozenset[str]:
        return self._succ[v]

    def predecessors(self, v: str) -> frozenset[str]:
        return self._pred[v]

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))

    def __contains__(self, v: str) -> bool:
        return v in self._succ

    def __len__(self) -> int:
        return len(self.vertices)

    def renamed(self, name: str) -> "Digraph":
        return Digraph(self.vertices, self.edges, name)

    def with_edges(self, extra: Iterable[tuple[str, str]], name: str | None = None) -> "Digraph":
        return validate_digraph(self.vertices, list(self.edges) + list(extra),
                                name=name or self.name)

    def __repr__(self) -> str:
        return f"Digraph({self.name!r}, |V|={len(self.vertices)}, |E|={len(self.edges)})"


@dataclass(frozen=True)
class VertexMap:
    """A total assignment from source vertices to target vertices."""

    source: Digraph
    target: Digraph
    assignment: Mapping[str, str]

    def __post_init__(self):
        missing = [v for v in self.source.vertices if v not in self.assignment]
        if missing:
            raise ValueError(f"vertex map is not total; missing {missing}")
        bad = [w for w in self.assignment.values() if w not in self.target]
        if bad:
            raise ValueError(f"vertex map hits unknown target vertices {sorted(set(bad))}")

    def __call__(self, v: str) -> str:
        return self.assignment[v]

    def compose(self, other: "VertexMap") -> "VertexMap":
        """``self`` after ``other``."""
        return VertexMap(other.source, self.target,
                         {v: self.assignment[other.assignment[v]] for v in other.source.vertices})

    @classmethod
    def identity(cls, G: Digraph) -> "VertexMap":
        return cls(G, G, {v: v for v in G.vertices})


def _check_id(v) -> str:
    v = str(v)
    if not v or _WS.search(v):
        raise EmptyIdentifier(v)
    return v


def validate_digraph(raw_vertices: Iterable, raw_edges: Iterable, name: str = "G",
                     allow_duplicates: bool = False) -> Digraph:
    """Build a validated :class:`Digraph`.

    Vertices that only occur in edges are declared automatically.
    """
    verts: set[str] = set()
    for v in raw_vertices:
        verts.add(_check_id(v))
    seen: set[tuple[str, str]] = set()
    for e in raw_edges:
        u, w = e
        u, w = _check_id(u), _check_id(w)
        if u == w:
            raise SelfLoop(u)
        if (u, w) in seen and not allow_duplicates:
            raise DuplicateEdge(u, w)
        seen.add((u, w))
        verts.update((u, w))
    return Digraph(tuple(sorted(verts, key=vertex_key)), frozenset(seen), name)


def induced_subgraph(G: Digraph, vertices: Iterable[str], name: str | None = None) -> Digraph:
    keep = set(vertices)
    return Digraph(tuple(v for v in G.vertices if v in keep),
                   frozenset(e for e in G.edges if e[0] in keep and e[1] in keep),
                   name or G.name)


def cartesian_product(G: Digraph, H: Digraph) -> Digraph:
    verts = [pair_vertex(v, w) for v in G.vertices for w in H.vertices]
    edges = [(pair_vertex(v, w), pair_vertex(v, w2)) for v in G.vertices for w, w2 in H.edges]
    edges += [(pair_vertex(v, w), pair_vertex(v2, w)) for v, v2 in G.edges for w in H.vertices]
    return validate_digraph(verts, edges, name=f"({G.name}[]{H.name})")


def strong_product(X: Digraph, Y: Digraph) -> Digraph:
    verts = [pair_vertex(v, w) for v in X.vertices for w in Y.vertices]
    edges = [(pair_vertex(v, w), pair_vertex(v, w2)) for v in X.vertices for w, w2 in Y.edges]
    edges += [(pair_vertex(v, w), pair_vertex(v2, w)) for v, v2 in X.edges for w in Y.vertices]
    edges += [(pair_vertex(v, w), pair_vertex(v2, w2)) for v, v2 in X.edges for w, w2 in Y.edges]
    return validate_digraph(verts, edges, name=f"({X.name}[x]{Y.name})")


def line_digraph(spec: str) -> Digraph:
    """Line digraph I_n from an orientation string over ``+``/``-``."""
    edges = []
    for k, ch in enumerate(spec):
        if ch == "+":
            edges.append((str(k), str(k + 1)))
        elif ch == "-":
            edges.append((str(k + 1), str(k)))
        else:
            raise InvalidCharacter(ch)
    return validate_digraph([str(k) for k in range(len(spec) + 1)], edges, name=f"I[{spec}]")


def subgraph_combine(A: Digraph, B: Digraph, mode: str = "union") -> Digraph:
    if mode == "union":
        return validate_digraph(set(A.vertices) | set(B.vertices), A.edges | B.edges,
                                name=f"({A.name}|{B.name})")
    if mode == "intersection":
        verts = set(A.vertices) & set(B.vertices)
        return validate_digraph(verts, A.edges & B.edges, name=f"({A.name}&{B.name})")
    raise ValueError(f"unknown mode {mode!r}")


def transitive_closure(G: Digraph) -> Digraph:
    edges = []
    for v in G.vertices:
        stack, seen = [v], set()
        while stack:
            x = stack.pop()
            for y in G.successors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        edges.extend((v, w) for w in seen if w != v)
    return validate_digraph(G.vertices, edges, name=f"closure({G.name})")


def to_networkx(G: Digraph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges)
    return g


def is_isomorphic(G: Digraph, H: Digraph, max_vertices: int = 12) -> tuple[bool, dict | None]:
    """Return ``(True, bijection)`` when G and H are isomorphic digraphs."""
    if max(len(G.vertices), len(H.vertices)) > max_vertices:
        raise TooLarge(max(len(G.vertices), len(H.vertices)), max_vertices)
    if len(G.vertices) != len(H.vertices) or len(G.edges) != len(H.edges):
        return False, None
    deg_g = sorted((len(G.successors(v)), len(G.predecessors(v))) for v in G.vertices)
    deg_h = sorted((len(H.successors(v)), len(H.predecessors(v))) for v in H.vertices)
    if deg_g != deg_h:
        return False, None
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(to_networkx(G), to_networkx(H))
    for witness in matcher.isomorphisms_iter():
        return True, dict(sorted(witness.items(), key=lambda kv: vertex_key(kv[0])))
    return False, None


# -- text and JSON formats --------------------------------------------------

def parse_digraph_text(text: str, name: str = "G") -> Digraph:
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "digraph" and len(parts) == 2:
            name = parts[1]
        elif parts[0] == "vertex" and len(parts) == 2:
            verts.append(parts[1])
        elif len(parts) == 3 and parts[1] == "->":
            edges.append((parts[0], parts[2]))
        else:
            raise ParseError(lineno, raw)
    return validate_digraph(verts, edges, name=name)


def format_digraph_text(G: Digraph) -> str:
    lines = [f"digraph {G.name}"]
    touched = {v for e in G.edges for v in e}
    lines += [f"vertex {v}" for v in G.vertices if v not in touched]
    lines += [f"{u} -> {w}" for u, w in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def digraph_to_json(G: Digraph) -> dict:
    return {"name": G.name, "vertices": list(G.vertices),
            "edges": [list(e) for e in G.sorted_edges()]}


def digraph_from_json(obj: dict | str) -> Digraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return validate_digraph(obj.get("vertices", []), [tuple(e) for e in obj["edges"]],
                                name=obj.get("name", "G"))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (SelfLoop, DuplicateEdge, EmptyIdentifier)):
            raise
        raise ParseError(0, str(obj)[:80]) from exc
