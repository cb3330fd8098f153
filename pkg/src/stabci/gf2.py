"""Dense GF(2) linear algebra on uint8 numpy matrices.

Vectors are rows; a matrix's row span is the subspace it generates.
uint8 matrix products are safe for parity work: wraparound mod 256
preserves parity, so ``(a @ b) & 1`` is the GF(2) product.
"""
from __future__ import annotations

import numpy as np


def as_gf2(mat) -> np.ndarray:
    """Coerce input to a 2-D uint8 array with entries in {0, 1}."""
    arr = np.atleast_2d(np.asarray(mat)).astype(np.uint8) & 1
    return arr


def rref(mat) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Reduced row echelon form over GF(2).

    Returns ``(reduced, rank, pivot_columns)``.  Row span is preserved;
    rows at index >= rank are zero.
    """
    a = as_gf2(mat).copy()
    n_rows, n_cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a, r, tuple(pivots)


def rank(mat) -> int:
    """Rank of ``mat`` over GF(2)."""
    return rref(mat)[1]


def canonical(mat) -> np.ndarray:
    """RREF with zero rows removed: a canonical basis for the row span."""
    a, r, _ = rref(mat)
    return a[:r]


def span_equal(a, b) -> bool:
    """True iff the row spans of ``a`` and ``b`` coincide."""
    ca, cb = canonical(a), canonical(b)
    return ca.shape == cb.shape and bool(np.array_equal(ca, cb))


def in_span(mat, vec) -> bool:
    """True iff ``vec`` lies in the row span of ``mat``."""
    red, r, piv = rref(mat)
    v = np.asarray(vec, dtype=np.uint8).copy() & 1
    for i, p in enumerate(piv):
        if v[p]:
            v ^= red[i]
    return not v.any()


def nullspace(mat) -> np.ndarray:
    """Basis (as rows) of the right null space ``{v : mat @ v = 0}``."""
    red, r, piv = rref(mat)
    n_cols = red.shape[1]
    free = [c for c in range(n_cols) if c not in piv]
    basis = np.zeros((len(free), n_cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(piv):
            basis[i, p] = red[row, f]
    return basis


def inverse(mat) -> np.ndarray:
    """Inverse of a square GF(2) matrix.  Raises ValueError if singular."""
    a = as_gf2(mat)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError(f"matrix is {a.shape}, expected square")
    aug, r, piv = rref(np.concatenate([a, np.eye(n, dtype=np.uint8)], axis=1))
    if r < n or piv[:n] != tuple(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    return aug[:, n:]


def matmul(a, b) -> np.ndarray:
    """GF(2) matrix product (mod-256 wraparound keeps parity intact)."""
    return (as_gf2(a) @ as_gf2(b)) & 1


class Echelon:
    """Incremental row-echelon basis for online independence tests."""

    def __init__(self, n_cols: int, rows=None):
        self.n_cols = n_cols
        self._rows: dict[int, np.ndarray] = {}
        if rows is not None:
            for row in as_gf2(rows):
                self.add(row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec) -> np.ndarray:
        v = np.asarray(vec, dtype=np.uint8).copy() & 1
        for p in sorted(self._rows):
            if v[p]:
                v ^= self._rows[p]
        return v

    def contains(self, vec) -> bool:
        return not self._reduce(vec).any()

    def add(self, vec) -> bool:
        """Insert ``vec``; returns True iff it was independent (rank grew)."""
        v = self._reduce(vec)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        self._rows[int(nz[0])] = v
        return True
