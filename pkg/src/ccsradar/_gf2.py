"""Dense GF(2) linear algebra helpers.

Everything here works on uint8 arrays holding {0, 1}.  Matrix products go
through float32 BLAS and reduce mod 2 afterwards, which is exact as long as
the inner dimension stays below 2**24 (float32 integer range).
"""

from __future__ import annotations

import numpy as np

_F32_EXACT_LIMIT = 1 << 24


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product a @ b over GF(2); a is (..., k), b is (k, n)."""
    k = b.shape[0]
    if k >= _F32_EXACT_LIMIT:
        raise ValueError(f"inner dimension {k} too large for exact float32 product")
    prod = a.astype(np.float32) @ b.astype(np.float32)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


def gf2_row_reduce(mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Returns (rref, pivot_columns).  Row order follows pivot discovery, scanning
    columns left to right; rows below and above each pivot are cleared.
    """
    m = mat.astype(np.uint8).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        clear = np.nonzero(m[:, c])[0]
        clear = clear[clear != r]
        if clear.size:
            m[clear] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def gf2_rank(mat: np.ndarray) -> int:
    return len(gf2_row_reduce(mat)[1])
