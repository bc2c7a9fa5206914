import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pathhom.linalg import (
    RationalEchelon,
    hermite_normal_form,
    hnf_coordinates,
    integer_left_kernel,
    matmul,
    rank_q,
    smith_normal_form,
)

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).invariants == [1, 6]
    assert smith_normal_form([[2, 4], [4, 8]]).invariants == [2]
    assert smith_normal_form([[0, 0]]).rank == 0
    assert smith_normal_form([]).invariants == []
    assert smith_normal_form([[2, 0], [0, 4]]).torsion == [2, 4]


@settings(max_examples=200)
@given(matrices)
def test_snf_against_numpy_and_transforms(M):
    res = smith_normal_form(M, transforms=True)
    assert res.rank == np.linalg.matrix_rank(np.array(M, dtype=float))
    D = matmul(matmul(res.U, M), res.V)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            expected = res.invariants[i] if i == j and i < res.rank else 0
            assert x == expected
    for a, b in zip(res.invariants, res.invariants[1:]):
        assert b % a == 0
    # product of invariants equals the gcd of maximal minors when square and full rank
    if len(M) == len(M[0]) and res.rank == len(M):
        det = round(abs(np.linalg.det(np.array(M, dtype=float))))
        assert np.prod(res.invariants) == det


@settings(max_examples=200)
@given(matrices)
def test_left_kernel_and_hnf(M):
    n = len(M[0])
    K = integer_left_kernel(M, n)
    assert len(K) == len(M) - np.linalg.matrix_rank(np.array(M, dtype=float))
    for k in K:
        assert all(x == 0 for x in matmul([k], M)[0])
    H = hermite_normal_form(M, n)
    assert len(H) == rank_q([dict(enumerate(r)) for r in M])
    for row in M:
        coords = hnf_coordinates(H, row)
        assert coords is not None
        if H:
            assert matmul([coords], H)[0] == list(row)
        else:
            assert not any(row)


def test_hnf_coordinates_reject_non_lattice_vectors():
    H = hermite_normal_form([[2, 0], [0, 1]], 2)
    assert hnf_coordinates(H, [1, 0]) is None


def test_rational_echelon_solve():
    ech = RationalEchelon(track=True)
    assert ech.add({0: 1, 1: 1}, "a")
    assert ech.add({1: 1}, "b")
    assert not ech.add({0: 2, 1: 3})
    assert ech.rank == 2
    combo = ech.solve({0: 1, 1: 2})
    assert combo == {"a": 1, "b": 1}
    assert not ech.contains({2: 1})
