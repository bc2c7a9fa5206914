"""Exact integer and rational linear algebra.

Dense integer matrices are lists of lists of Python ints; sparse rational
vectors are ``dict[int, Fraction]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

__all__ = [
    "SNFResult",
    "smith_normal_form",
    "hermite_normal_form",
    "integer_left_kernel",
    "hnf_coordinates",
    "matmul",
    "RationalEchelon",
    "rank_q",
]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = [list(col) for col in zip(*B)] if B else [[] for _ in range(cols)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def _row_echelon(B: list[list[int]], U: list[list[int]] | None, ncols: int) -> int:
    """In-place unimodular row reduction to echelon form; returns the rank."""
    m = len(B)
    r = 0
    for col in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if B[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(B[i][col]))
            if piv != r:
                B[r], B[piv] = B[piv], B[r]
                if U is not None:
                    U[r], U[piv] = U[piv], U[r]
            p = B[r][col]
            clean = True
            for i in range(r + 1, m):
                a = B[i][col]
                if a == 0:
                    continue
                q = a // p
                if q:
                    Bi, Br = B[i], B[r]
                    for j in range(col, ncols):
                        if Br[j]:
                            Bi[j] -= q * Br[j]
                    if U is not None:
                        Ui, Ur = U[i], U[r]
                        for j, x in enumerate(Ur):
                            if x:
                                Ui[j] -= q * x
                if B[i][col] != 0:
                    clean = False
            if clean:
                r += 1
                break
    return r


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Row Hermite normal form with zero rows dropped.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    """
    B = [list(r) for r in rows]
    if not B:
        return []
    n = len(B[0]) if ncols is None else ncols
    rank = _row_echelon(B, None, n)
    H = B[:rank]
    for i, row in enumerate(H):
        piv = next(j for j, x in enumerate(row) if x)
        if row[piv] < 0:
            H[i] = row = [-x for x in row]
        for k in range(i):
            q = H[k][piv] // row[piv]
            if q:
                H[k] = [a - q * b for a, b in zip(H[k], row)]
    return H


def integer_left_kernel(A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A Z-basis (in Hermite form) of ``{x in Z^m : x A = 0}``.

    The kernel of an integer matrix is a saturated lattice, so the rows of
    the unimodular transform that annihilate ``A`` generate all of it.
    """
    m = len(A)
    if m == 0:
        return []
    B = [list(r) for r in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    rank = _row_echelon(B, U, ncols)
    return hermite_normal_form(U[rank:], m)


def hnf_coordinates(H: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the Hermite basis ``H``; None if outside."""
    v = list(v)
    coords = []
    for row in H:
        piv = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(v[piv], row[piv])
        if rem:
            return None
        coords.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coords


@dataclass
class SNFResult:
    """Invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    When transforms are requested, ``U @ M @ V`` equals the diagonal matrix
    with the invariants leading the diagonal.
    """

    invariants: list[int]
    rank: int
    U: list[list[int]] | None = field(default=None, repr=False)
    V: list[list[int]] | None = field(default=None, repr=False)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariants if d > 1]


def smith_normal_form(M: Sequence[Sequence[int]], transforms: bool = False) -> SNFResult:
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    # V is kept transposed so that column operations become row operations.
    Vt = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if Vt is not None:
            Vt[i], Vt[j] = Vt[j], Vt[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        if Vt is not None:
            Vt[dst] = [a - q * b for a, b in zip(Vt[dst], Vt[src])]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # divisibility against the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], -1)
                continue
            # move the smallest entry of row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    invariants = [A[k][k] for k in range(t)]
    V = [list(col) for col in zip(*Vt)] if Vt is not None and n else ([] if transforms else None)
    return SNFResult(invariants, len(invariants), U, V)


class RationalEchelon:
    """Incremental row echelon over Q with optional combination tracking.

    Vectors are sparse ``dict[int, Fraction]``; each stored pivot vector has
    its smallest index as pivot with coefficient 1.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict[int, tuple[dict, dict]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, vec: dict, combo: dict | None):
        vec = {k: Fraction(x) for k, x in vec.items() if x}
        while vec:
            k = min(vec)
            entry = self.pivots.get(k)
            if entry is None:
                return vec, combo, k
            pv, pc = entry
            a = vec[k]
            for j, x in pv.items():
                y = vec.get(j, 0) - a * x
                if y:
                    vec[j] = y
                else:
                    vec.pop(j, None)
            if combo is not None:
                for t, x in pc.items():
                    y = combo.get(t, 0) - a * x
                    if y:
                        combo[t] = y
                    else:
                        combo.pop(t, None)
        return vec, combo, None

    def add(self, vec: dict, tag: Hashable = None) -> bool:
        """Insert ``vec``; True when it enlarged the span."""
        combo = {tag: Fraction(1)} if self.track else None
        vec, combo, k = self._reduce(vec, combo)
        if k is None:
            return False
        a = vec[k]
        vec = {j: x / a for j, x in vec.items()}
        if combo is not None:
            combo = {t: x / a for t, x in combo.items()}
        self.pivots[k] = (vec, combo)
        return True

    def contains(self, vec: dict) -> bool:
        return self._reduce(vec, None)[2] is None

    def solve(self, vec: dict) -> dict | None:
        """Tags and coefficients expressing ``vec``; None when outside the span."""
        if not self.track:
            raise RuntimeError("solve needs track=True")
        rest, combo, k = self._reduce(vec, {})
        if k is not None:
            return None
        return {t: -x for t, x in combo.items() if x}


def rank_q(vectors: Iterable[dict]) -> int:
    ech = RationalEchelon()
    for v in vectors:
        ech.add(v)
    return ech.rank
