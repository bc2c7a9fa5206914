import random

import pytest

from pathhom.corpus import build_digraph
from pathhom.fuzz import acyclic_violations, fuzz, random_digraph, shrink, structure_violations


def test_random_digraphs_are_reproducible():
    a = random_digraph(random.Random(5))
    b = random_digraph(random.Random(5))
    assert a.vertices == b.vertices and a.edges == b.edges
    assert 1 <= len(a.vertices) <= 7


def test_small_structure_run_is_clean():
    rep = fuzz("structure", graphs=40, seed=1, max_vertices=6)
    assert rep.ok and rep.minimal_paths > 0
    assert rep.to_json()["seed"] == 1


def test_wide_mode_agrees_on_corpus_graphs():
    for name in ("G2", "ex0123", "Q"):
        G = build_digraph(name)
        assert structure_violations(G, 3, wide=True) == []


def test_acyclic_run_is_clean():
    assert fuzz("acyclic", graphs=40, seed=2).ok
    assert acyclic_violations(build_digraph("cube")) == []


def test_unknown_kind():
    with pytest.raises(ValueError):
        fuzz("other", graphs=1)


def test_shrink_finds_a_smallest_failing_subgraph():
    G = build_digraph("cube")
    small = shrink(G, lambda H: len(H.edges) >= 2)
    assert len(small.edges) == 2
    assert len(small.vertices) <= 4
