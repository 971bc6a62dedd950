"""Exact linear algebra over Q (and a fast mod-p rank for certificates)."""
from __future__ import annotations

from typing import Sequence

import numpy as np

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

__all__ = ["Q", "rref", "kernel_basis", "rank", "sparse_rank", "sparse_rank_mod_p", "rank_mod_p",
           "row_space_equal", "PRIME"]

PRIME = 2_147_483_647


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Q(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        pivot_row = [x * inv for x in m[r]]
        m[r] = pivot_row
        nz = [j for j in range(c, ncols) if pivot_row[j] != 0]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {x : A x = 0} in reduced column-echelon form.

    Vector k has a 1 in the k-th free column and 0 in every other free
    column, so coordinates of any kernel element are read off at the free
    columns.
    """
    if not rows:
        return [[Q(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def sparse_rank(rows: list[dict]) -> int:
    """Rank of a matrix given as a list of {column: value} rows.

    Gaussian elimination that keeps rows sparse and picks the shortest
    available row as pivot for each leading column.
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {c: Q(v) for c, v in row.items() if v != 0}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = 1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def sparse_rank_mod_p(rows: list[dict], ncols: int, p: int = PRIME) -> int:
    """Rank modulo p of a matrix of rationals given as sparse rows.

    Denominators must be prime to p; the result never exceeds the rank over Q.
    """
    if not rows or ncols == 0:
        return 0
    dense = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            v = Q(v)
            den = int(v.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            dense[i, c] = int(v.numerator) % p * pow(den, p - 2, p) % p
    try:
        import flint

        return flint.nmod_mat(dense.shape[0], dense.shape[1], dense.ravel().tolist(), p).rank()
    except ImportError:
        return rank_mod_p(dense, p)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int = PRIME) -> int:
    """Rank of an integer matrix modulo the prime p (never exceeds the rank over Q)."""
    if len(rows) == 0:
        return 0
    a = np.array([[int(x) % p for x in row] for row in rows], dtype=np.int64)
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - (col[mask, None] * a[r]) % p) % p
        r += 1
    return r


def row_space_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    ra, rb = rank(a), rank(b)
    return ra == rb == rank(list(a) + list(b))
