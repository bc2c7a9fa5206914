"""Algebraic identities checked on random instances.

Each suite is a hypothesis test with 500 examples; the acceptance module runs
them and reads back how many instances were executed.
"""

from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import allowed_chains, digraphs, free_chains
from pathhom.chains import Chain, Form, boundary, coboundary_d, pair
from pathhom.digraph import cartesian_product
from pathhom.omega import build_complex, membership, omega_layer
from pathhom.products import cross_product, diagonal, star_product

EXAMPLES = 500
executed: Counter = Counter()
suite = settings(max_examples=EXAMPLES)


@st.composite
def omega_chains(draw, G, dim):
    basis = omega_layer(G, dim).basis
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    acc = Chain.zero(dim)
    for b, c in zip(basis, coeffs):
        acc = acc + b * c
    return acc


@suite
@given(st.data())
def boundary_squares_to_zero(data):
    c = data.draw(free_chains())
    assert not boundary(boundary(c))
    G = data.draw(digraphs())
    cx = build_complex(G, min(3, max(len(G.vertices) - 1, 0)))
    for n in range(2, cx.maxdim + 1):
        A, B = cx.boundary_matrices[n], cx.boundary_matrices[n - 1]
        if A and B:
            for row in A:
                assert all(sum(row[k] * B[k][j] for k in range(len(B))) == 0
                           for j in range(len(B[0])))
    executed["d_squared_chains"] += 1


@suite
@given(free_chains(cls=Form, max_dim=2))
def coboundary_squares_to_zero(w):
    assert not coboundary_d("01234", coboundary_d("01234", w))
    executed["d_squared_forms"] += 1


@suite
@given(st.data())
def pairing_duality(data):
    w = data.draw(free_chains(cls=Form, max_dim=2))
    u = data.draw(free_chains(dim=w.dim + 1))
    assert pair(coboundary_d("01234", w), u) == pair(w, boundary(u))
    executed["duality"] += 1


def _factors(data, max_vertices=6):
    X = data.draw(digraphs(max_vertices=max_vertices))
    Y = data.draw(digraphs(max_vertices=max_vertices))
    p = data.draw(st.integers(0, 2))
    q = data.draw(st.integers(0, 3 - p))
    return X, Y, p, q


@suite
@given(st.data())
def cross_leibniz(data):
    X, Y, p, q = _factors(data)
    u = data.draw(allowed_chains(X, p))
    v = data.draw(allowed_chains(Y, q))
    lhs = boundary(cross_product(u, v))
    rhs = cross_product(boundary(u), v) + cross_product(u, boundary(v)) * (-1) ** p
    assert lhs == rhs
    ou, ov = data.draw(omega_chains(X, p)), data.draw(omega_chains(Y, q))
    prod = cross_product(ou, ov)
    if prod:
        assert membership(cartesian_product(X, Y), prod)
    executed["cross_leibniz"] += 1


@suite
@given(st.data())
def star_leibniz(data):
    X, Y, p, q = _factors(data, max_vertices=3)
    a = data.draw(allowed_chains(X, p, cls=Form))
    b = data.draw(allowed_chains(Y, q, cls=Form))
    XY = cartesian_product(X, Y)
    lhs = coboundary_d(XY.vertices, star_product(a, b))
    rhs = star_product(coboundary_d(X.vertices, a), b) + \
        star_product(a, coboundary_d(Y.vertices, b)) * (-1) ** p
    for w in omega_layer(XY, p + q + 1).basis:
        assert pair(lhs, w) == pair(rhs, w)
    executed["star_leibniz"] += 1


@suite
@given(st.data())
def star_cross_adjunction(data):
    X, Y, p, q = _factors(data)
    u, v = data.draw(allowed_chains(X, p)), data.draw(allowed_chains(Y, q))
    a = data.draw(allowed_chains(X, p, cls=Form))
    b = data.draw(allowed_chains(Y, q, cls=Form))
    assert pair(star_product(a, b), cross_product(u, v)) == pair(a, u) * pair(b, v)
    executed["star_cross"] += 1


@suite
@given(st.data())
def diagonals_are_chain_maps(data):
    G = data.draw(digraphs())
    n = data.draw(st.integers(0, 3))
    u = data.draw(omega_chains(G, n))
    for transposed in (False, True):
        D = diagonal(u, transposed=transposed, G=G)
        assert boundary(D) == diagonal(boundary(u), transposed=transposed)
    executed["diagonals"] += 1


SUITES = {
    "boundary squared (chains and Omega matrices)": (boundary_squares_to_zero, "d_squared_chains"),
    "coboundary squared": (coboundary_squares_to_zero, "d_squared_forms"),
    "(d w, u) = (w, boundary u)": (pairing_duality, "duality"),
    "cross-product Leibniz": (cross_leibniz, "cross_leibniz"),
    "star-product Leibniz on Omega": (star_leibniz, "star_leibniz"),
    "(a star b, u x v) = (a,u)(b,v)": (star_cross_adjunction, "star_cross"),
    "both diagonals are chain maps": (diagonals_are_chain_maps, "diagonals"),
}
