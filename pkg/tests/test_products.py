import copy
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathhom.chains import Chain, Form, boundary, pair
from pathhom.corpus import build_digraph
from pathhom.digraph import cartesian_product, pair_vertex
from pathhom.errors import NotOmegaMember
from pathhom.homology import RationalHomology
from pathhom.omega import membership, omega_basis
from pathhom.products import (
    build_chain_homotopy,
    cohomology_representatives,
    cross_product,
    cup,
    cup_via_diagonal,
    diagonal,
    lift_functional,
    skew_check,
    star_product,
    staircases,
    verify_chain_homotopy,
)

e = Chain.elementary
f = Form.elementary


def v(x, y):
    return pair_vertex(x, y)


def test_cross_product_examples():
    assert cross_product(e("a"), e("12")) == e((v("a", "1"), v("a", "2")))
    assert cross_product(e("ab"), e("1")) == e((v("a", "1"), v("b", "1")))
    assert cross_product(e("a"), e("b")) == e((v("a", "b"),))
    expected = (e((v("a", "1"), v("b", "1"), v("b", "2")))
                - e((v("a", "1"), v("a", "2"), v("b", "2"))))
    assert cross_product(e("ab"), e("12")) == expected


@pytest.mark.parametrize("p, q", [(0, 0), (1, 1), (2, 1), (2, 2), (3, 2)])
def test_staircase_counts(p, q):
    stairs = staircases(p, q)
    assert len(stairs) == comb(p + q, q)
    # the staircase along the bottom then up has no cells below it
    bottom = tuple([0] * p + [1] * q)
    assert dict(stairs)[bottom] == 1


@settings(max_examples=100)
@given(st.integers(0, 3), st.integers(0, 3))
def test_cross_leibniz_on_simplices(p, q):
    u = e("abcd"[:p + 1])
    w = e("1234"[:q + 1])
    lhs = boundary(cross_product(u, w)) if p + q else Chain.zero(-1)
    if p + q == 0:
        return
    rhs = Chain.zero(p + q - 1)
    if p:
        rhs = rhs + cross_product(boundary(u), w)
    if q:
        rhs = rhs + cross_product(u, boundary(w)) * (-1) ** p
    assert lhs == rhs


def test_star_product_examples():
    assert star_product(f("s"), f("12")) == f((v("s", "1"), v("s", "2")))
    assert star_product(f("sa"), f("0")) == f((v("s", "0"), v("a", "0")))
    assert pair(star_product(f("ab"), f("12")), cross_product(e("ab"), e("12"))) == 1


def test_cup_examples_on_triangle():
    assert cup(f("sa"), f("ae")) == f("sae")
    assert cup(f("sa"), f("be")) == Form.zero(2)
    assert cup(f("sa"), f("as")) == Form.zero(2)


def test_diagonal_examples():
    ab = e("ab")
    a, b = e("a"), e("b")
    assert diagonal(ab) == cross_product(a, ab) + cross_product(ab, b)
    assert diagonal(ab, transposed=True) == cross_product(ab, a) + cross_product(b, ab)
    with pytest.raises(NotOmegaMember):
        diagonal(e("sae") + e("sbe"), G=build_digraph("Q"))


@pytest.mark.parametrize("name", ["T", "Q", "C3", "ex0123", "cube"])
def test_diagonals_commute_with_boundary(name):
    G = build_digraph(name)
    for n in range(1, 4):
        for u in omega_basis(G, n):
            for t in (False, True):
                d = diagonal(u, t, G)
                assert boundary(d) == diagonal(boundary(u), t)


@pytest.mark.parametrize("name", ["T", "Q", "C3", "cube"])
def test_chain_homotopy(name):
    F = build_chain_homotopy(build_digraph(name), 3)
    assert verify_chain_homotopy(F)
    assert F.dump().startswith("base_edge ")


def test_chain_homotopy_degree_zero_is_a_cycle():
    F = build_chain_homotopy(build_digraph("T"), 1)
    for img in F.images[0]:
        assert not boundary(img)


def test_chain_homotopy_on_torus():
    box = cartesian_product(build_digraph("C3"), build_digraph("C3"))
    assert verify_chain_homotopy(build_chain_homotopy(box, 2))


def test_corrupted_chain_homotopy_is_rejected():
    F = build_chain_homotopy(build_digraph("Q"), 2)
    bad = copy.copy(F)
    bad.images = {n: list(imgs) for n, imgs in F.images.items()}
    img = bad.images[1][0]
    path, c = img.items()[0]
    bad.images[1][0] = img - e(path, 2 * c)
    assert not verify_chain_homotopy(bad)


def test_edgeless_chain_homotopy_is_zero():
    from pathhom.digraph import validate_digraph
    G = validate_digraph(["0", "1"], [])
    F = build_chain_homotopy(G, 2)
    assert F.base_edge is None and verify_chain_homotopy(F)


def test_lift_functional_reproduces_values():
    G = build_digraph("cube")
    basis = omega_basis(G, 2)
    values = list(range(1, len(basis) + 1))
    form = lift_functional(G, 2, values)
    assert [pair(form, b) for b in basis] == values


def test_cup_on_torus_pairs_with_top_class():
    box = cartesian_product(build_digraph("C3"), build_digraph("C3"))
    reps = cohomology_representatives(box, 1)
    assert len(reps) == 2
    (top,) = RationalHomology(box, 2).representatives(2)
    phi, psi = reps
    assert pair(cup(phi, psi), top) != 0
    assert pair(cup(phi, psi), top) == cup_via_diagonal(phi, psi, top)


def test_skew_symmetry_on_torus():
    box = cartesian_product(build_digraph("C3"), build_digraph("C3"))
    out = skew_check(box, 1, 1)
    assert out["holds"] and out["sign"] == -1
    assert out["ranks"] == {"H^p": 2, "H^q": 2, "H^p+q": 1}


def test_skew_check_degree_zero():
    out = skew_check(build_digraph("C3"), 0, 1)
    assert out["holds"] and out["sign"] == 1
    assert out["ranks"]["H^p"] == 1


@pytest.mark.parametrize("name", ["T", "Q", "cube"])
def test_acyclic_fixtures_have_no_positive_products(name):
    out = skew_check(build_digraph(name), 1, 1)
    assert out["holds"] and out["ranks"]["H^p"] == 0 and not out["pairs"]


def test_cross_product_stays_in_omega():
    Q, T = build_digraph("Q"), build_digraph("T")
    prod = cartesian_product(Q, T)
    for u in omega_basis(Q, 2):
        for w in omega_basis(T, 2):
            assert membership(prod, cross_product(u, w))
