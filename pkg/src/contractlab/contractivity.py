"""Set-contractivity coefficients of constant row sum matrices.

For the diagonal span X* = {alpha * e}, the coefficient
c(A) = sup_{x not in X*} d(Ax, X*) / d(x, X*) has closed forms:
c = r - mu(A) under the max norm and c = ||A K||_2 under the Euclidean
norm, where K is an orthonormal basis of the orthogonal complement of e.
Under a weighted Euclidean norm only the upper bound
||W^(1/2) A W^(-1) K||_2 is available.

Also provides Monte Carlo / exhaustive sampling oracles, the spectral
paracontractivity check, and the affine stochastic decomposition of
set-nonexpansive maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import Matrix, as_matrix, is_scrambling, is_stochastic, mu, row_sum_profile
from .projections import LINF, L2, WL2, Norm, linf, project, project_columns, weighted_l2

_EXACT_TOL = 1e-12


class RowSumError(ValueError):
    """Operation requires constant row sums and the input does not have them."""


class JacobiConvergenceError(RuntimeError):
    """Cyclic Jacobi sweep limit reached before off-diagonal tolerance."""


@dataclass(frozen=True)
class ContractivityReport:
    norm: Norm
    c: float
    is_set_nonexpansive: bool
    is_set_contractive: bool
    method: str  # closed_form_linf | spectral_l2 | weighted_bound | sampled
    is_bound_only: bool = False

    def to_json(self) -> dict:
        return {
            "norm": str(self.norm),
            "c": self.c,
            "bound_only": self.is_bound_only,
            "set_nonexpansive": self.is_set_nonexpansive,
            "set_contractive": self.is_set_contractive,
            "method": self.method,
        }


@dataclass(frozen=True)
class BasisK:
    n: int
    columns: np.ndarray  # n x (n-1), orthonormal, orthogonal to e


@dataclass(frozen=True)
class AffineDecomposition:
    B: Matrix
    xstar: np.ndarray  # constant vector in the diagonal span


def basis_K(n: int) -> BasisK:
    """Deterministic orthonormal basis of the complement of e.

    Built from the Householder reflector mapping e/sqrt(n) to the first
    standard basis vector; columns 2..n of the reflector span e-perp.
    """
    if n < 2:
        raise ValueError("basis requires n >= 2")
    u = np.full(n, 1.0 / np.sqrt(n))
    v = u - np.eye(n)[0]
    H = np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)
    K = H[:, 1:].copy()
    K.setflags(write=False)
    return BasisK(n=n, columns=K)


def _jacobi_max_eigenvalue(G: np.ndarray, off_tol: float = 1e-14,
                           max_sweeps: int = 100) -> float:
    """Largest eigenvalue of a small symmetric matrix by cyclic Jacobi."""
    A = np.array(G, dtype=float)
    m = A.shape[0]
    if m == 1:
        return float(A[0, 0])
    scale = max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        off_sq = float(np.sum(A * A * (1.0 - np.eye(m))))
        if off_sq <= (off_tol * scale) ** 2:
            return float(np.diag(A).max())
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = A[p, q]
                if abs(apq) <= 1e-18 * off_tol * scale:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:  # rotation angle ~ 1/(2 theta)
                    t = 0.5 / theta
                elif theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                A[[p, q], :] = rot.T @ A[[p, q], :]
                A[:, [p, q]] = A[:, [p, q]] @ rot
                A[p, q] = A[q, p] = 0.0
    raise JacobiConvergenceError(
        f"Jacobi iteration did not reach off-diagonal tolerance in {max_sweeps} sweeps")


def spectral_norm_2(M) -> float:
    """Largest singular value of a rectangular matrix.

    Uses cyclic Jacobi on the Gram matrix of the smaller side; relative
    accuracy about 1e-10 on well-scaled inputs.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError("expected a 2-d array")
    if not np.all(np.isfinite(M)):
        raise ValueError("entries must be finite")
    G = M @ M.T if M.shape[0] <= M.shape[1] else M.T @ M
    lam = _jacobi_max_eigenvalue(G)
    return float(np.sqrt(max(0.0, lam)))


def _require_constant_row_sum(A: Matrix, row_sum_tol: float) -> float:
    profile = row_sum_profile(A, row_sum_tol)
    if not profile.is_constant:
        raise RowSumError("matrix does not have constant row sums")
    return profile.r


def contractivity_linf(A, row_sum_tol: float = 1e-9) -> ContractivityReport:
    """Exact c(A) = r - mu(A) under the max norm (constant row sums only)."""
    A = as_matrix(A)
    r = _require_constant_row_sum(A, row_sum_tol)
    c = r - mu(A)
    return ContractivityReport(
        norm=linf(), c=float(c),
        is_set_nonexpansive=c <= 1.0 + _EXACT_TOL,
        is_set_contractive=c < 1.0 - _EXACT_TOL,
        method="closed_form_linf")


def contractivity_l2(A, row_sum_tol: float = 1e-9) -> ContractivityReport:
    """Exact c(A) = ||A K||_2 under the Euclidean norm."""
    A = as_matrix(A)
    _require_constant_row_sum(A, row_sum_tol)
    if A.n == 1:
        c = 0.0
    else:
        c = spectral_norm_2(A.a @ basis_K(A.n).columns)
    return ContractivityReport(
        norm=Norm(L2), c=float(c),
        is_set_nonexpansive=c <= 1.0 + _EXACT_TOL,
        is_set_contractive=c < 1.0 - _EXACT_TOL,
        method="spectral_l2")


def contractivity_weighted_bound(A, w, row_sum_tol: float = 1e-9) -> ContractivityReport:
    """Upper bound ||W^(1/2) A W^(-1) K||_2 on c(A) under the w-weighted norm.

    Only an upper bound: the set-contractive verdict is asserted when the
    bound is < 1, but a bound >= 1 proves nothing.
    """
    A = as_matrix(A)
    _require_constant_row_sum(A, row_sum_tol)
    norm = weighted_l2(w)  # validates positivity, renormalizes max(w) = 1
    if norm.weights.size != A.n:
        raise ValueError("weight vector length must equal matrix dimension")
    if A.n == 1:
        bound = 0.0
    else:
        wv = norm.weights
        K = basis_K(A.n).columns
        M = np.sqrt(wv)[:, None] * A.a * (1.0 / wv)[None, :] @ K
        bound = spectral_norm_2(M)
    return ContractivityReport(
        norm=norm, c=float(bound),
        is_set_nonexpansive=bound <= 1.0 + _EXACT_TOL,
        is_set_contractive=bound < 1.0 - _EXACT_TOL,
        method="weighted_bound", is_bound_only=True)


def contractivity(A, norm: Norm, row_sum_tol: float = 1e-9) -> ContractivityReport:
    """Dispatch to the closed form / bound for the given norm."""
    if norm.kind == LINF:
        return contractivity_linf(A, row_sum_tol)
    if norm.kind == L2:
        return contractivity_l2(A, row_sum_tol)
    if norm.kind == WL2:
        return contractivity_weighted_bound(A, norm.weights, row_sum_tol)
    raise ValueError(f"no contractivity formula for norm {norm.kind!r}")


def empirical_contractivity(A, norm: Norm, samples: int = 10000,
                            seed: int = 0, chunk: int = 20000) -> float:
    """Monte Carlo lower bound on c(A): max over sampled x outside the
    diagonal span of d(Ax, X*) / d(x, X*).

    Samples are standard normal vectors with their projection removed, so
    the sup over the unit sphere of the complement is being probed.
    Deterministic for a fixed seed.
    """
    A = as_matrix(A)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    best = 0.0
    remaining = samples
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        X = rng.standard_normal((A.n, m))
        alpha, dist = project_columns(X, norm)
        keep = dist > 1e-12
        if not np.any(keep):
            continue
        X = (X[:, keep] - alpha[keep]) / dist[keep]
        _, dout = project_columns(A.a @ X, norm)
        best = max(best, float(dout.max()))
    return best


def exhaustive_binary_contractivity(A, norm: Norm | None = None) -> float:
    """Max of d(Ax, X*) / d(x, X*) over all binary vectors x in {0,1}^n
    excluding 0 and e.

    Under the max norm this restricted maximum attains the exact
    coefficient r - mu(A) for constant row sum matrices.
    """
    A = as_matrix(A)
    if norm is None:
        norm = linf()
    n = A.n
    if n < 2:
        return 0.0
    codes = np.arange(1, 2 ** n - 1)
    X = ((codes[None, :] >> np.arange(n)[:, None]) & 1).astype(float)
    _, din = project_columns(X, norm)
    _, dout = project_columns(A.a @ X, norm)
    return float((dout / din).max())


def _right_singular_space(M: np.ndarray, which: str, tol: float) -> np.ndarray:
    _, s, Vt = np.linalg.svd(M)
    mask = np.abs(s - 1.0) < tol if which == "unit" else s < tol
    return Vt[mask].T


def is_paracontractive_l2(B, norm_tol: float = 1e-8, angle_tol: float = 1e-6) -> bool:
    """Spectral test of the paracontracting property under the Euclidean
    norm: ||Bx|| < ||x|| exactly for the non-fixed points x.

    For linear B this holds iff ||B||_2 <= 1 and the right singular
    subspace for singular value 1 coincides with the fixed point space
    ker(B - I).  Subspaces are compared by principal angles.
    """
    B = as_matrix(B)
    a = B.a
    smax = np.linalg.norm(a, 2)
    if smax > 1.0 + norm_tol:
        return False
    V1 = _right_singular_space(a, "unit", 1e-8)
    V2 = _right_singular_space(a - np.eye(B.n), "null", 1e-8)
    if V1.shape[1] != V2.shape[1]:
        return False
    if V1.shape[1] == 0:
        return True
    angles = np.arccos(np.clip(np.linalg.svd(V1.T @ V2, compute_uv=False), -1.0, 1.0))
    return bool(np.all(angles < angle_tol))


def is_pseudocontractive_stochastic_linf(A, tol: float = 1e-9) -> bool:
    """For stochastic A, pseudocontractivity under the max norm is
    equivalent to the scrambling property."""
    A = as_matrix(A)
    if not is_stochastic(A, tol):
        raise ValueError("matrix must be stochastic")
    return is_scrambling(A)


def decompose_affine(A, x, row_sum_tol: float = 1e-9) -> AffineDecomposition:
    """Affine stochastic form of the action of A at x: find row-stochastic
    B and a constant vector xstar with B x = A x - xstar.

    Requires A set-nonexpansive under the max norm (c = r - mu <= 1).
    Each row of B mixes the argmin and argmax coordinates of x; when A is
    set-contractive and x is off the diagonal span, both mixing weights
    are strictly positive in every row and B is scrambling.  For constant
    x the averaging matrix (1/n) e e^T is returned.
    """
    A = as_matrix(A)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != A.n or not np.all(np.isfinite(x)):
        raise ValueError("x must be a finite vector matching the matrix dimension")
    rep = contractivity_linf(A, row_sum_tol)
    if not rep.is_set_nonexpansive:
        raise ValueError("matrix is not set-nonexpansive under the max norm")
    n = A.n
    ax = A.a @ x
    xstar_alpha = project(ax, linf()).alpha - project(x, linf()).alpha
    xstar = np.full(n, xstar_alpha)
    y = ax - xstar
    lo, hi = int(np.argmin(x)), int(np.argmax(x))
    if x[hi] - x[lo] <= 1e-14:
        B = np.full((n, n), 1.0 / n)
        xstar = ax - B @ x
        return AffineDecomposition(B=Matrix(B), xstar=xstar)
    lam = (x[hi] - y) / (x[hi] - x[lo])
    lam = np.clip(lam, 0.0, 1.0)
    B = np.zeros((n, n))
    B[:, lo] = lam
    B[:, hi] += 1.0 - lam
    return AffineDecomposition(B=Matrix(B), xstar=xstar)
