"""Tests for real matrix powers of symmetric positive definite matrices."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from tailop import (
    DimensionTooLargeError,
    DomainError,
    NonSymmetricError,
    NotPositiveDefiniteError,
    TailIndexMatrix,
    apply_scaling,
    eigendecompose,
    in_scaling_cone,
    matrix_power,
    matrix_power_series,
)


def random_spd(rng, dim, lo=0.1, hi=5.0):
    # random orthogonal basis, eigenvalues in [lo, hi]
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    lams = rng.uniform(lo, hi, dim)
    m = q @ np.diag(lams) @ q.T
    return (m + m.T) / 2.0


def test_eigendecompose_frozen_2x2():
    dec = eigendecompose([[2.0, 1.0], [1.0, 2.0]])
    assert_allclose(dec.eigenvalues, [3.0, 1.0], rtol=1e-14)
    s = 1.0 / np.sqrt(2.0)
    assert_allclose(dec.basis, [[s, s], [s, -s]], atol=1e-14)


def test_eigendecompose_diagonal_sorted_descending():
    dec = eigendecompose(np.diag([2.0, 3.0]))
    assert_allclose(dec.eigenvalues, [3.0, 2.0], rtol=0)
    assert_allclose(dec.basis, [[0.0, 1.0], [1.0, 0.0]], atol=0)


def test_eigendecompose_identity_stable_tie_order():
    dec = eigendecompose(np.eye(3))
    assert_allclose(dec.eigenvalues, [1.0, 1.0, 1.0], rtol=0)
    assert_allclose(dec.basis, np.eye(3), atol=1e-14)


def test_eigendecompose_reconstructs_randomly():
    rng = np.random.default_rng(20240811)
    for _ in range(100):
        dim = int(rng.integers(1, 6))
        mat = random_spd(rng, dim)
        dec = eigendecompose(mat)
        # rows are orthonormal eigenvectors
        assert_allclose(dec.basis @ dec.basis.T, np.eye(dim), atol=1e-10)
        recon = dec.basis.T @ np.diag(dec.eigenvalues) @ dec.basis
        assert_allclose(recon, mat, atol=1e-10)
        assert np.all(np.diff(dec.eigenvalues) <= 1e-12)


def test_eigendecompose_rejects_asymmetric():
    with pytest.raises(NonSymmetricError):
        eigendecompose([[1.0, 0.2], [0.0, 1.0]])


def test_eigendecompose_rejects_oversized():
    with pytest.raises(DimensionTooLargeError):
        eigendecompose(np.eye(65))


def test_tail_index_matrix_requires_positive_definite():
    with pytest.raises(NotPositiveDefiniteError):
        TailIndexMatrix([[1.0, 2.0], [2.0, 1.0]])  # eigenvalues 3, -1
    with pytest.raises(NotPositiveDefiniteError):
        TailIndexMatrix([[1.0, 1.0], [1.0, 1.0]])  # singular


def test_tail_index_matrix_diagonal_constructor():
    mat = TailIndexMatrix.diagonal([0.5, 2.0])
    assert_allclose(mat.entries, np.diag([0.5, 2.0]), atol=0)
    assert mat.dim == 2
    assert_allclose(TailIndexMatrix.identity(3).entries, np.eye(3), atol=0)


def test_matrix_power_frozen_value():
    mat = TailIndexMatrix([[2.0, 1.0], [1.0, 2.0]])
    expected = [[0.3125, -0.1875], [-0.1875, 0.3125]]
    assert_allclose(matrix_power(mat, 0.5), expected, atol=1e-14)


def test_matrix_power_diagonal_is_elementwise():
    mat = TailIndexMatrix.diagonal([2.0, 3.0])
    assert_allclose(matrix_power(mat, 0.5), np.diag([0.25, 0.125]), rtol=1e-14)


def test_matrix_power_at_one_is_identity():
    rng = np.random.default_rng(7)
    mat = TailIndexMatrix(random_spd(rng, 4))
    assert_allclose(matrix_power(mat, 1.0), np.eye(4), atol=1e-12)


def test_matrix_power_identity_matrix_scales():
    mat = TailIndexMatrix(np.eye(2))
    assert_allclose(matrix_power(mat, 0.3), 0.3 * np.eye(2), rtol=1e-14)


def test_matrix_power_rejects_nonpositive_base():
    mat = TailIndexMatrix(np.eye(2))
    for u in (0.0, -1.0, np.nan):
        with pytest.raises(DomainError):
            matrix_power(mat, u)


def test_semigroup_property():
    # u^A v^A = (uv)^A for commuting powers of the same matrix
    rng = np.random.default_rng(915)
    for _ in range(100):
        dim = int(rng.integers(1, 5))
        mat = TailIndexMatrix(random_spd(rng, dim))
        u, v = rng.uniform(1e-3, 1.0, 2)
        left = matrix_power(mat, u) @ matrix_power(mat, v)
        right = matrix_power(mat, u * v)
        assert_allclose(left, right, atol=1e-10)


def test_inverse_property():
    rng = np.random.default_rng(916)
    for _ in range(100):
        dim = int(rng.integers(1, 5))
        mat = TailIndexMatrix(random_spd(rng, dim))
        u = rng.uniform(1e-3, 1.0)
        prod = matrix_power(mat, u) @ matrix_power(mat, 1.0 / u)
        assert_allclose(prod, np.eye(dim), atol=1e-9)


def test_series_oracle_agrees_with_eigenroute():
    rng = np.random.default_rng(917)
    for _ in range(50):
        dim = int(rng.integers(1, 5))
        mat = TailIndexMatrix(random_spd(rng, dim))
        u = rng.uniform(0.2, 5.0)
        series = matrix_power_series(mat.entries, u, terms=80)
        assert_allclose(series, matrix_power(mat, u), atol=1e-8)


def test_series_oracle_frozen_cases():
    # zero matrix: u^0 = I for any u
    assert_allclose(matrix_power_series(np.zeros((2, 2)), 0.37), np.eye(2), atol=0)
    # identity matrix at u = e: e^I log e = e I
    assert_allclose(matrix_power_series(np.eye(2), np.e), np.e * np.eye(2), rtol=1e-12)


def test_series_oracle_rejects_nonpositive_base():
    with pytest.raises(DomainError):
        matrix_power_series(np.eye(2), 0.0)


def test_apply_scaling_examples():
    mat = TailIndexMatrix.diagonal([2.0, 3.0])
    assert_allclose(apply_scaling(mat, 0.5, (1.0, 1.0)), [0.25, 0.125], rtol=1e-14)
    coupled = TailIndexMatrix([[2.0, 1.0], [1.0, 2.0]])
    assert_allclose(apply_scaling(coupled, 0.5, (1.0, 0.0)), [0.3125, -0.1875], atol=1e-14)
    ident = TailIndexMatrix(np.eye(3))
    assert_allclose(apply_scaling(ident, 0.7, (1.0, 2.0, 3.0)), [0.7, 1.4, 2.1], rtol=1e-14)


def test_in_scaling_cone_diagonal_always_true():
    mat = TailIndexMatrix.diagonal([0.5, 2.0])
    grid = (0.5, 0.1, 0.01)
    assert in_scaling_cone(mat, (1.0, 0.0), grid)
    assert in_scaling_cone(mat, (0.0, 1.0), grid)
    assert in_scaling_cone(mat, (3.0, 4.0), grid)


def test_in_scaling_cone_coupled_axis_point_false():
    mat = TailIndexMatrix([[2.0, 1.0], [1.0, 2.0]])
    assert not in_scaling_cone(mat, (1.0, 0.0), (0.5, 0.1, 0.01))
    # interior points stay inside
    assert in_scaling_cone(mat, (1.0, 1.0), (0.5, 0.1, 0.01))


def test_in_scaling_cone_grid_validation():
    mat = TailIndexMatrix(np.eye(2))
    with pytest.raises(DomainError):
        in_scaling_cone(mat, (1.0, 1.0), ())
    with pytest.raises(DomainError):
        in_scaling_cone(mat, (1.0, 1.0), (0.1, 0.5))  # not decreasing
    with pytest.raises(DomainError):
        in_scaling_cone(mat, (1.0, 1.0), (1.5, 0.5))  # outside (0, 1)
    with pytest.raises(DomainError):
        in_scaling_cone(mat, (1.0, -1.0), (0.5, 0.1))  # negative component


def test_scaled_vectors_decay_to_zero():
    # max-norm of u^A w decreases once u is small enough to kill every mode
    rng = np.random.default_rng(918)
    for _ in range(20):
        dim = int(rng.integers(1, 5))
        mat = TailIndexMatrix(random_spd(rng, dim))
        w = rng.uniform(0.5, 2.0, dim)
        us = 0.8 ** np.arange(30)
        norms = [np.max(np.abs(apply_scaling(mat, u, w))) for u in us]
        tail = norms[-10:]
        assert all(a > b for a, b in zip(tail, tail[1:]))


def test_matrix_power_matches_scalar_for_dim_one():
    mat = TailIndexMatrix([[2.5]])
    u = 0.3
    assert_allclose(matrix_power(mat, u), [[u**2.5]], rtol=1e-14)
