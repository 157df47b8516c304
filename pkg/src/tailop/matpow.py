"""Power-matrix scalings u**A for symmetric positive-definite index matrices.

The power matrix u**A = exp(A log u) is evaluated through the orthogonal
eigendecomposition A = O.T @ diag(lam) @ O, giving
u**A = O.T @ diag(u**lam) @ O.  A truncated exponential series is kept
alongside as an independent oracle for cross-checking the eigen route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionTooLargeError,
    DomainError,
    NonSymmetricError,
    NotPositiveDefiniteError,
)

SYMMETRY_ATOL = 1e-12
EIGENVALUE_FLOOR = 1e-14
MAX_DIM = 64
CONE_ATOL = 1e-12

_SERIES_TERM_BOUND = 1e-14
_SERIES_MAX_TERMS = 200


def _as_square_matrix(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"matrix must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix entries must be finite")
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted descending plus the orthogonal basis.

    Rows of ``basis`` are the eigenvectors, so the decomposed matrix is
    reconstructed as ``basis.T @ diag(eigenvalues) @ basis``.
    """

    eigenvalues: np.ndarray
    basis: np.ndarray


def eigendecompose(matrix) -> EigenSystem:
    """Orthogonal eigendecomposition of a symmetric matrix.

    Eigenvalues are sorted descending with a stable sort, so exact ties keep
    the solver's input order; each eigenvector is scaled so its
    largest-magnitude component (first such component on ties) is positive.
    The output is therefore deterministic for a fixed input.

    Raises:
        NonSymmetricError: asymmetry above 1e-12 in any entry.
        DimensionTooLargeError: dimension above 64.
        DomainError: non-square input or non-finite entries.
    """
    m = _as_square_matrix(matrix)
    d = m.shape[0]
    if d == 0:
        raise DomainError("matrix must have at least one row")
    if d > MAX_DIM:
        raise DimensionTooLargeError(
            f"dimension {d} exceeds the supported maximum {MAX_DIM}"
        )
    asym = float(np.max(np.abs(m - m.T)))
    if asym > SYMMETRY_ATOL:
        raise NonSymmetricError(
            f"matrix is asymmetric by {asym:.3e} (tolerance {SYMMETRY_ATOL:.0e})"
        )
    values, vectors = np.linalg.eigh(0.5 * (m + m.T))
    order = np.argsort(-values, kind="stable")
    values = np.ascontiguousarray(values[order])
    basis = np.ascontiguousarray(vectors.T[order])
    for row in basis:
        pivot = int(np.argmax(np.abs(row)))
        if row[pivot] < 0.0:
            row *= -1.0
    values.setflags(write=False)
    basis.setflags(write=False)
    return EigenSystem(eigenvalues=values, basis=basis)


class TailIndexMatrix:
    """Symmetric positive-definite index matrix with a cached eigensystem.

    All eigenvalues must exceed the positivity floor 1e-14; construction
    validates symmetry and caches the orthogonal decomposition used by
    :func:`matrix_power`.
    """

    def __init__(self, matrix):
        m = _as_square_matrix(matrix).copy()
        system = eigendecompose(m)
        smallest = float(system.eigenvalues[-1])
        if smallest <= EIGENVALUE_FLOOR:
            raise NotPositiveDefiniteError(
                f"smallest eigenvalue {smallest:.3e} is at or below the floor "
                f"{EIGENVALUE_FLOOR:.0e}"
            )
        m.setflags(write=False)
        self.entries = m
        self.dim = int(m.shape[0])
        self.eigenvalues = system.eigenvalues
        self.basis = system.basis

    @classmethod
    def diagonal(cls, values) -> "TailIndexMatrix":
        """Diagonal index matrix from a vector of positive entries."""
        v = np.asarray(values, dtype=float)
        if v.ndim != 1:
            raise DomainError("diagonal entries must form a 1-d vector")
        return cls(np.diag(v))

    @classmethod
    def identity(cls, dim: int) -> "TailIndexMatrix":
        return cls(np.eye(int(dim)))

    def __repr__(self) -> str:
        return f"TailIndexMatrix(dim={self.dim}, eigenvalues={self.eigenvalues.tolist()})"


def _as_index_matrix(matrix) -> TailIndexMatrix:
    if isinstance(matrix, TailIndexMatrix):
        return matrix
    return TailIndexMatrix(matrix)


def matrix_power(matrix, u: float) -> np.ndarray:
    """Power matrix u**A = basis.T @ diag(u**eigenvalues) @ basis.

    ``matrix`` may be a TailIndexMatrix or anything accepted by its
    constructor.  Requires u > 0; u = 1 yields the identity up to rounding.
    """
    a = _as_index_matrix(matrix)
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise DomainError(f"u must be positive and finite, got {u!r}")
    scales = u ** a.eigenvalues
    return (a.basis.T * scales) @ a.basis


def matrix_power_series(matrix, u: float, terms: int | None = None) -> np.ndarray:
    """Truncated series for u**A = sum_k (A log u)**k / k!.

    Independent oracle for :func:`matrix_power`: accepts any real square
    matrix, no symmetry required.  With ``terms=None`` the truncation point
    is the first k where the a-priori bound ||A||**k |log u|**k / k! drops
    below 1e-14, capped at 200 terms.  ``terms=1`` returns the identity.
    """
    m = _as_square_matrix(matrix)
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise DomainError(f"u must be positive and finite, got {u!r}")
    step = m * math.log(u)
    if terms is None:
        norm = float(np.linalg.norm(step, 2))
        bound = 1.0
        terms = 1
        while bound >= _SERIES_TERM_BOUND and terms < _SERIES_MAX_TERMS:
            bound *= norm / terms
            terms += 1
    terms = int(terms)
    if terms < 1:
        raise DomainError(f"terms must be at least 1, got {terms}")
    total = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, terms):
        term = term @ step / k
        total = total + term
    return total


def apply_scaling(matrix, u: float, w) -> np.ndarray:
    """Scaled vector u**A @ w."""
    a = _as_index_matrix(matrix)
    vec = np.asarray(w, dtype=float)
    if vec.shape != (a.dim,):
        raise DomainError(f"w must be a vector of length {a.dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise DomainError("w entries must be finite")
    return matrix_power(a, u) @ vec


def in_scaling_cone(matrix, w, u_grid) -> bool:
    """Whether u**A @ w stays componentwise nonnegative over the whole grid.

    The grid must be nonempty, strictly decreasing and contained in (0, 1);
    it stands in for "all sufficiently small u".  Components are accepted
    down to a -1e-12 relative slack so orthogonal mixing noise does not flip
    the verdict.
    """
    a = _as_index_matrix(matrix)
    vec = np.asarray(w, dtype=float)
    if vec.shape != (a.dim,):
        raise DomainError(f"w must be a vector of length {a.dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)) or np.any(vec < 0.0):
        raise DomainError("w must be finite and componentwise nonnegative")
    grid = np.asarray(u_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("u_grid must be a nonempty 1-d grid")
    if np.any(grid <= 0.0) or np.any(grid >= 1.0):
        raise DomainError("u_grid values must lie in (0, 1)")
    if grid.size > 1 and np.any(np.diff(grid) >= 0.0):
        raise DomainError("u_grid must be strictly decreasing")
    for u in grid:
        scaled = apply_scaling(a, float(u), vec)
        slack = CONE_ATOL * max(1.0, float(np.max(np.abs(scaled))))
        if np.any(scaled < -slack):
            return False
    return True
