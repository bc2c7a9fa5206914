from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import free_chains
from pathhom.chains import (
    Chain,
    Form,
    allowed_basis,
    allowed_paths_between,
    boundary,
    chain_from_json,
    chain_to_json,
    classify_path,
    coboundary_d,
    concatenate,
    delta_component,
    format_chain_text,
    pair,
    parse_chain_text,
    width,
)
from pathhom.corpus import build_digraph
from pathhom.errors import (
    DimMismatch,
    EndpointMismatch,
    IndexOutOfRange,
    MixedDimensions,
    ParseError,
    UnknownVertex,
)

e = Chain.elementary


def test_boundary_examples():
    assert boundary(e("ab")) == e("b") - e("a")
    assert boundary(e("abc")) == e("bc") - e("ac") + e("ab")
    assert boundary(e("a")) == Chain.zero(-1)
    sq = e("013") - e("023")
    assert boundary(sq) == e("13") - e("03") + e("01") - e("23") + e("03") - e("02")


def test_boundary_keeps_irregular_faces():
    assert boundary(e("aba")) == e("ba") - e("aa") + e("ab")


def test_delta_components():
    c = e("abc")
    assert delta_component(c, 0) == e("bc")
    assert delta_component(c, 1) == -e("ac")
    with pytest.raises(IndexOutOfRange):
        delta_component(c, 3)


@settings(max_examples=200)
@given(free_chains())
def test_delta_components_sum_to_boundary(c):
    if c.dim == 0:
        return
    total = Chain.zero(c.dim - 1)
    for i in range(c.dim + 1):
        total = total + delta_component(c, i)
    assert total == boundary(c)


def test_chain_arithmetic():
    c = e("ab", 2) + e("ab", -2)
    assert not c and len(c) == 0
    assert (e("ab") * 3)[("a", "b")] == 3
    assert width(e("ab", 2) - e("cb", 3)) == 5
    with pytest.raises(MixedDimensions):
        Chain(1, [(("a", "b", "c"), 1)])
    with pytest.raises(DimMismatch):
        e("ab") + e("abc")


def test_allowed_basis_and_classification():
    T = build_digraph("T")
    assert allowed_basis(T, 2) == [("s", "a", "e")] or len(allowed_basis(T, 2)) == 1
    assert len(allowed_basis(T, 1)) == 3
    C3 = build_digraph("C3")
    assert allowed_basis(C3, 3) == []
    assert len(allowed_paths_between(build_digraph("cube"), 3, "0", "7")) == 6
    assert classify_path(C3, ("0", "1", "2")) == {"allowed": True, "regular": True}
    assert classify_path(C3, ("0", "2"))["allowed"] is False
    assert classify_path(C3, ("0", "1", "0"))["regular"] is False
    with pytest.raises(UnknownVertex):
        classify_path(C3, ("0", "q"))


def test_concatenation():
    assert concatenate(e("ab"), e("bc")) == e("abc")
    assert concatenate(e("a"), e("ab")) == e("ab")
    with pytest.raises(EndpointMismatch):
        concatenate(e("ab"), e("cd"))


@settings(max_examples=150)
@given(free_chains(vertices="0123", max_dim=2), free_chains(vertices="4567", max_dim=2))
def test_boundary_of_concatenation(u, v):
    # faces of a join: left faces, right faces, and the face dropping the shared vertex
    u = Chain(u.dim, [(p[:-1] + ("x",), c) for p, c in u.items()])
    v = Chain(v.dim, [(("x",) + q[1:], c) for q, c in v.items()])
    if u.dim == 0 or v.dim == 0:
        return
    k = u.dim
    keep_left = Chain(k - 1, [(p, c) for p, c in boundary(u).items() if p[-1] == "x"])
    keep_right = Chain(v.dim - 1, [(q, c) for q, c in boundary(v).items() if q[0] == "x"])
    middle = {}
    for p, a in u.items():
        for q, b in v.items():
            r = p[:-1] + q[1:]
            middle[r] = middle.get(r, 0) + a * b
    rhs = (concatenate(keep_left, v) + concatenate(u, keep_right) * (-1) ** k
           + Chain(k + v.dim - 1, middle.items()) * (-1) ** k)
    assert boundary(concatenate(u, v)) == rhs


def test_coboundary_and_pairing():
    w = Form.elementary("a")
    dw = coboundary_d("abc", w)
    assert dw == Form(1, [(("b", "a"), 1), (("c", "a"), 1), (("a", "b"), -1), (("a", "c"), -1)])
    assert pair(dw, e("ab")) == pair(w, boundary(e("ab")))
    with pytest.raises(DimMismatch):
        pair(Form.elementary("ab"), e("abc"))
    assert pair(Form.elementary("ab", Fraction(1, 2)), e("ab", 4)) == 2


def test_forms_use_fractions():
    f = Form(1, [(("a", "b"), 2)]) * Fraction(1, 4)
    assert f[("a", "b")] == Fraction(1, 2)


def test_text_round_trip_and_errors():
    c = e("013") - e("023")
    assert parse_chain_text(format_chain_text(c)) == c
    assert parse_chain_text("+1/2 [a b]", cls=Form)[("a", "b")] == Fraction(1, 2)
    with pytest.raises(MixedDimensions):
        parse_chain_text("+1 [a b] -1 [a b c]")
    with pytest.raises(ParseError):
        parse_chain_text("+1 [a b] junk")
    with pytest.raises(ParseError):
        parse_chain_text("")
    assert parse_chain_text("", dim=2) == Chain.zero(2)


def test_json_round_trip():
    c = e("013") - e("023", Fraction(1, 3))
    assert chain_from_json(chain_to_json(c)) == c
    f = Form.elementary("ab", 2)
    back = chain_from_json(chain_to_json(f))
    assert isinstance(back, Form) and back == f
    with pytest.raises(ParseError):
        chain_from_json({"terms": []})
    with pytest.raises(MixedDimensions):
        chain_from_json({"dim": 2, "terms": [{"c": 1, "path": ["a", "b"]}]})
