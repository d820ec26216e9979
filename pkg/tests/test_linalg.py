import numpy as np
import pytest
import scipy.linalg

from semiwilson.errors import IllConditioned
from semiwilson.linalg import nullspace, rank, rref


def random_low_rank(rng, rows, cols, r):
    A = rng.standard_normal((rows, r)) + 1j * rng.standard_normal((rows, r))
    B = rng.standard_normal((r, cols)) + 1j * rng.standard_normal((r, cols))
    return A @ B


def test_zero_matrix():
    basis = nullspace(np.zeros((4, 3)), 1e-9)
    assert len(basis) == 3
    assert np.allclose(np.array(basis), np.eye(3))


def test_dimension_matches_scipy():
    rng = np.random.default_rng(7)
    for trial in range(40):
        rows, cols = rng.integers(1, 12, size=2)
        r = int(rng.integers(0, min(rows, cols) + 1))
        M = random_low_rank(rng, rows, cols, r) if r else np.zeros((rows, cols), dtype=complex)
        basis = nullspace(M, 1e-9)
        assert len(basis) == scipy.linalg.null_space(M).shape[1]
        for v in basis:
            assert np.abs(M @ v).max() < 1e-8 * max(1, np.abs(M).max())


def test_rref_pivots():
    M = np.array([[0, 2, 4], [1, 1, 1], [1, 3, 5]], dtype=complex)
    R, pivots = rref(M, 1e-9)
    assert pivots == [0, 1]
    assert np.allclose(R[:2], [[1, 0, -1], [0, 1, 2]])
    assert np.allclose(nullspace(M, 1e-9)[0], [1, -2, 1])


def test_guard_band_raises():
    M = np.array([[1, 0], [0, 1e-8]], dtype=complex)
    with pytest.raises(IllConditioned) as info:
        nullspace(M, 1e-9)
    assert info.value.column == 1
    assert len(nullspace(np.array([[1, 0], [0, 1e-12]]), 1e-9)) == 1
    assert len(nullspace(np.array([[1, 0], [0, 1e-6]]), 1e-9)) == 0


def test_rank():
    assert rank([[1, 0, 0], [2, 0, 0], [0, 1j, 0]], 1e-9) == 2
    assert rank([], 1e-9) == 0
