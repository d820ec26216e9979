"""Row reduction over the complex numbers with an explicit rank tolerance."""

from __future__ import annotations

import numpy as np

from .errors import IllConditioned

GUARD_FACTOR = 100.0


def rref(matrix, eps: float) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form by Gauss-Jordan with partial pivoting.

    Columns are processed left to right; the pivot is the first row of
    largest magnitude among the unreduced rows.  A column whose best
    candidate is at most ``eps`` is free.  A candidate in
    ``(eps, GUARD_FACTOR * eps)`` raises ``IllConditioned``.
    """
    A = np.array(matrix, dtype=complex)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = np.abs(A[r:, c])
        k = int(np.argmax(col))
        mag = float(col[k])
        if mag <= eps:
            continue
        if mag < GUARD_FACTOR * eps:
            raise IllConditioned(c, mag, eps)
        if k:
            A[[r, r + k]] = A[[r + k, r]]
        A[r] /= A[r, c]
        factors = A[:, c].copy()
        factors[r] = 0
        A -= np.outer(factors, A[r])
        A[:, c] = 0
        A[r, c] = 1
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(matrix, eps: float) -> list[np.ndarray]:
    """Free-variable basis of ``{v : matrix @ v = 0}`` at tolerance ``eps``.

    Each basis vector has a 1 in its free coordinate, zeros in the other
    free coordinates, and is determined on the pivot coordinates.
    """
    A = np.asarray(matrix, dtype=complex)
    n = A.shape[1]
    R, pivots = rref(A, eps)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for j in free:
        v = np.zeros(n, dtype=complex)
        v[j] = 1
        for i, p in enumerate(pivots):
            v[p] = -R[i, j]
        basis.append(v)
    return basis


def rank(vectors, eps: float) -> int:
    """Rank of a list of vectors, decided by the same row reduction."""
    if len(vectors) == 0:
        return 0
    _, pivots = rref(np.array(vectors, dtype=complex), eps)
    return len(pivots)
