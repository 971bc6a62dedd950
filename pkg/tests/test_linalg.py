from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from dpx.linalg import kernel_basis, rank, rank_mod_p, row_space_equal, rref, sparse_rank

matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=6))


def _np_rank(m):
    return int(np.linalg.matrix_rank(np.array(m, dtype=float)))


@given(matrices)
def test_rank_agrees(m):
    n = len(m[0])
    r = rank(m)
    assert r == _np_rank(m)
    assert sparse_rank([{j: v for j, v in enumerate(row) if v} for row in m]) == r
    assert rank_mod_p(m) == r
    assert len(kernel_basis(m, n)) == n - r


@given(matrices)
def test_kernel_is_kernel(m):
    n = len(m[0])
    for v in kernel_basis(m, n):
        assert all(sum(Fraction(a) * Fraction(x) for a, x in zip(row, v)) == 0 for row in m)


def test_rref_and_row_space():
    rows, piv = rref([[2, 4, 6], [1, 2, 4]], 3)
    assert piv == [0, 2]
    assert row_space_equal([[1, 0], [0, 1]], [[1, 1], [1, -1]])
    assert not row_space_equal([[1, 0]], [[0, 1]])
