import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import digraphs
from pathhom.corpus import build_digraph, load_fixture, names
from pathhom.digraph import (
    Digraph,
    VertexMap,
    cartesian_product,
    digraph_from_json,
    digraph_to_json,
    format_digraph_text,
    is_isomorphic,
    line_digraph,
    parse_digraph_text,
    strong_product,
    subgraph_combine,
    to_networkx,
    transitive_closure,
    validate_digraph,
)
from pathhom.errors import (
    DuplicateEdge,
    EmptyIdentifier,
    InvalidCharacter,
    ParseError,
    SelfLoop,
    TooLarge,
)
from pathhom.homology import homology
from pathhom.minimal import split_at
from pathhom.corpus import chain_of
from pathhom.omega import build_complex


def brute_isomorphic(G, H):
    if len(G.vertices) != len(H.vertices):
        return False
    for perm in itertools.permutations(H.vertices):
        m = dict(zip(G.vertices, perm))
        if {(m[a], m[b]) for a, b in G.edges} == set(H.edges):
            return True
    return False


def test_triangle_accepted():
    T = validate_digraph(["s", "a", "e"], [("s", "a"), ("a", "e"), ("s", "e")])
    assert T.has_edge("s", "e") and len(T) == 3


def test_validation_errors():
    with pytest.raises(SelfLoop):
        validate_digraph(["0"], [("0", "0")])
    with pytest.raises(DuplicateEdge):
        validate_digraph(["0", "1"], [("0", "1"), ("0", "1")])
    with pytest.raises(EmptyIdentifier):
        validate_digraph([""], [])


def test_empty_digraph_is_legal():
    empty = validate_digraph([], [])
    assert len(empty) == 0 and not empty.edges
    assert len(strong_product(build_digraph("T"), empty)) == 0


def test_cartesian_products_against_networkx():
    I1 = build_digraph("I1")
    sq = cartesian_product(I1, I1)
    assert (len(sq.vertices), len(sq.edges)) == (4, 4)
    cube3 = cartesian_product(cartesian_product(I1, I1), I1)
    assert is_isomorphic(cube3, build_digraph("cube"))[0]
    C3 = build_digraph("C3")
    box = cartesian_product(C3, C3)
    oracle = nx.cartesian_product(to_networkx(C3), to_networkx(C3))
    assert (len(box.vertices), len(box.edges)) == (9, 18)
    assert len(box.edges) == oracle.number_of_edges()


def test_strong_products_against_networkx():
    I1, C3 = build_digraph("I1"), build_digraph("C3")
    sq = strong_product(I1, I1)
    assert (len(sq.vertices), len(sq.edges)) == (4, 5)
    s = strong_product(C3, C3)
    oracle = nx.strong_product(to_networkx(C3), to_networkx(C3))
    assert (len(s.vertices), len(s.edges)) == (9, 27) == (9, oracle.number_of_edges())


def test_line_digraphs():
    assert line_digraph("+").edges == {("0", "1")}
    assert line_digraph("--+").edges == {("1", "0"), ("2", "1"), ("2", "3")}
    assert line_digraph("").vertices == ("0",)
    with pytest.raises(InvalidCharacter):
        line_digraph("+x")


def test_subgraph_combine():
    G = build_digraph("T")
    assert subgraph_combine(G, G, "intersection").edges == G.edges
    rec, _ = split_at(chain_of("len4"), "9")
    assert subgraph_combine(rec.Y1, rec.Y2, "union").edges == rec.augmented.edges
    xrec, _ = split_at(chain_of("xcube"), "5")
    Z = subgraph_combine(xrec.Y1, xrec.Y2, "intersection")
    assert Z.edges == {("0", "2"), ("2", "8")}


def test_transitive_closure():
    assert len(transitive_closure(build_digraph("C3")).edges) == 6
    assert ("0", "2") in transitive_closure(build_digraph("chain012")).edges
    closed = transitive_closure(build_digraph("xcube"))
    assert homology(build_complex(closed, reduced=True)).is_trivial()


@settings(max_examples=60)
@given(digraphs(max_vertices=5))
def test_closure_idempotent(G):
    once = transitive_closure(G)
    assert transitive_closure(once).edges == once.edges


def test_isomorphism_examples():
    cube, xcube = build_digraph("cube"), build_digraph("xcube")
    assert not is_isomorphic(cube, xcube)[0]
    ok, witness = is_isomorphic(cube, cube)
    assert ok and all(cube.has_edge(witness[a], witness[b]) for a, b in cube.edges)
    with pytest.raises(TooLarge):
        is_isomorphic(cube, cube, max_vertices=4)


@settings(max_examples=80)
@given(digraphs(max_vertices=5), digraphs(max_vertices=5))
def test_isomorphism_matches_brute_force(G, H):
    assert is_isomorphic(G, H)[0] == brute_isomorphic(G, H)


def test_product_associativity_up_to_isomorphism():
    I1, T, C3 = (build_digraph(n) for n in ("I1", "T", "C3"))
    for A, B, C in [(I1, I1, I1), (I1, T, I1), (I1, C3, I1)]:
        left = cartesian_product(cartesian_product(A, B), C)
        right = cartesian_product(A, cartesian_product(B, C))
        assert is_isomorphic(left, right)[0]


def test_vertex_map_totality_and_composition():
    G = build_digraph("ex0123")
    with pytest.raises(ValueError):
        VertexMap(G, G, {"0": "0"})
    r = VertexMap(G, G, {v: ("2" if v == "3" else v) for v in G.vertices})
    assert r.compose(r).assignment == r.assignment
    assert VertexMap.identity(G).compose(r).assignment == r.assignment


def test_text_format_and_errors():
    G = parse_digraph_text("# c\ndigraph X\nvertex z\na -> b\n")
    assert G.name == "X" and "z" in G and G.has_edge("a", "b")
    with pytest.raises(ParseError) as info:
        parse_digraph_text("a -> b\na ->\n")
    assert info.value.line == 2


@pytest.mark.parametrize("name", names())
def test_fixtures_match_definitions_and_round_trip(name):
    G = load_fixture(name)
    D = build_digraph(name)
    assert set(G.vertices) == set(D.vertices) and G.edges == D.edges
    assert digraph_from_json(digraph_to_json(G)).edges == G.edges
    assert parse_digraph_text(format_digraph_text(G)).edges == G.edges


def test_digraph_is_hashable_value():
    a = validate_digraph(["1", "0"], [("0", "1")])
    b = validate_digraph(["0", "1"], [("0", "1")])
    assert isinstance(a, Digraph) and a.vertices == b.vertices
