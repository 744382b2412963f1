"""Dense matrix container with structural predicates and the row-pair
functionals mu and delta.

mu(A) is the minimum over row pairs of the summed elementwise minimum of
the two rows; for nonnegative A it is positive exactly when A is
scrambling.  delta(A) is the maximum over row pairs of the summed
positive part of the row difference; for constant row sum matrices it
contracts the spread max(x) - min(x) of any vector x under x -> Ax.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_ZERO_TOL = 1e-12
DEFAULT_ROW_SUM_TOL = 1e-9


class MatrixError(ValueError):
    """Invalid matrix data (non-square, non-finite, bad shape)."""


@dataclass(frozen=True)
class Matrix:
    """Immutable dense real n x n matrix.

    entries below ``zero_tol`` in magnitude are treated as structural
    zeros by pattern predicates (scrambling, digraph edges).
    """

    a: np.ndarray
    zero_tol: float = DEFAULT_ZERO_TOL

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise MatrixError(f"expected square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise MatrixError("matrix entries must be finite")
        if self.zero_tol < 0:
            raise MatrixError("zero_tol must be nonnegative")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def nonzero_pattern(self) -> np.ndarray:
        """Boolean mask of structurally nonzero entries."""
        return np.abs(self.a) > self.zero_tol


@dataclass(frozen=True)
class RowSumProfile:
    sums: np.ndarray
    is_constant: bool
    r: float | None = None


def as_matrix(A, zero_tol: float = DEFAULT_ZERO_TOL) -> Matrix:
    """Coerce an array-like into a Matrix (no-op for Matrix inputs)."""
    if isinstance(A, Matrix):
        return A
    return Matrix(np.asarray(A, dtype=float), zero_tol=zero_tol)


def mu(A) -> float:
    """min over row pairs j != k of sum_i min(A[j,i], A[k,i]).

    For n = 1 the pair set is empty and the single row sum is returned,
    so that pairwise-quantified inequalities hold vacuously.
    """
    A = as_matrix(A)
    a = A.a
    if A.n == 1:
        return float(a.sum())
    pair_sums = np.minimum(a[:, None, :], a[None, :, :]).sum(axis=2)
    iu = np.triu_indices(A.n, k=1)
    return float(pair_sums[iu].min())


def delta(A) -> float:
    """max over row pairs i, j of sum_k max(0, A[i,k] - A[j,k]); 0 for n = 1."""
    A = as_matrix(A)
    if A.n == 1:
        return 0.0
    a = A.a
    pos = np.maximum(0.0, a[:, None, :] - a[None, :, :]).sum(axis=2)
    return float(pos.max())


def delta_halfsum(A) -> float:
    """Equivalent form (1/2) max_{i,j} sum_k |A[i,k] - A[j,k]|.

    Equals delta(A) when A has constant row sums; used as a cross-check.
    """
    A = as_matrix(A)
    if A.n == 1:
        return 0.0
    a = A.a
    return float(0.5 * np.abs(a[:, None, :] - a[None, :, :]).sum(axis=2).max())


def is_scrambling(A) -> bool:
    """True iff every pair of rows shares a column where both entries are
    structurally nonzero.  True for n = 1."""
    A = as_matrix(A)
    if A.n == 1:
        return True
    nz = A.nonzero_pattern()
    shared = (nz[:, None, :] & nz[None, :, :]).any(axis=2)
    iu = np.triu_indices(A.n, k=1)
    return bool(shared[iu].all())


def is_stochastic(A, tol: float = DEFAULT_ROW_SUM_TOL) -> bool:
    """True iff all entries >= -tol and every row sum is within tol of 1."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    A = as_matrix(A)
    sums = A.a.sum(axis=1)
    return bool(np.all(A.a >= -tol) and np.all(np.abs(sums - 1.0) <= tol))


def row_sum_profile(A, row_sum_tol: float = DEFAULT_ROW_SUM_TOL) -> RowSumProfile:
    """Row sums plus the constant-row-sum flag and common value r.

    r is the mean of the row sums (no row is privileged).
    """
    if row_sum_tol < 0:
        raise ValueError("row_sum_tol must be nonnegative")
    A = as_matrix(A)
    sums = A.a.sum(axis=1)
    r = float(sums.mean())
    constant = bool(np.abs(sums - r).max() <= row_sum_tol)
    return RowSumProfile(sums=sums, is_constant=constant, r=r if constant else None)


def spread(x) -> float:
    """max(x) - min(x), the quantity contracted by delta."""
    x = np.asarray(x, dtype=float)
    return float(x.max() - x.min())
