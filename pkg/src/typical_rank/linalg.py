"""Dense real matrix kernels used throughout the package.

Matrices are plain 2-d ``numpy.ndarray`` objects of dtype float64.  Every
public function validates shape and finiteness of its inputs and raises
:class:`~typical_rank.errors.DimensionError` on a shape mismatch.
"""

from __future__ import annotations

import warnings
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg

from .errors import DimensionError, SingularError
from .polynomial import charpoly, real_roots

__all__ = [
    "TOL_LIN",
    "TOL_ID",
    "as_matrix",
    "determinant",
    "inverse",
    "rcond",
    "perp_vector",
    "last_row_cofactors",
    "kernel_vector",
    "real_eigenpairs",
    "det_scale",
    "elementary_symmetric_matrix",
    "vandermonde_product",
    "EIGEN_SIZE_CAP",
]

TOL_LIN = 1e-10
TOL_ID = 1e-8
EIGEN_SIZE_CAP = 32


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a finite float64 2-d array."""
    A = np.array(M, dtype=float)
    if A.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def _square(M, name: str = "matrix") -> np.ndarray:
    A = as_matrix(M, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    return A


def determinant(M) -> float:
    """Determinant by LU factorization with partial pivoting.

    >>> determinant([[1, 2], [3, 4]])
    -2.0...
    """
    A = _square(M)
    if A.shape[0] == 0:
        return 1.0
    return float(np.linalg.det(A))


def rcond(M) -> float:
    """Reciprocal 2-norm condition number ``s_min / s_max`` (0 for the zero matrix)."""
    A = _square(M)
    if A.shape[0] == 0:
        return 1.0
    s = np.linalg.svd(A, compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def inverse(M, tol: float = TOL_LIN) -> np.ndarray:
    """Inverse of a square matrix.

    Raises :class:`SingularError` when the smallest LU pivot is below
    ``tol`` times the largest one.
    """
    A = _square(M)
    n = A.shape[0]
    if n == 0:
        return A.copy()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if pivots.max() == 0.0 or pivots.min() < tol * pivots.max():
        raise SingularError("matrix is numerically singular", rcond(A))
    return scipy.linalg.lu_solve((lu, piv), np.eye(n), check_finite=False)


def perp_vector(W) -> np.ndarray:
    """Signed maximal-minor vector of an ``(n-1) x n`` matrix.

    Component ``j`` is ``(-1)**(n+j) * det(W without column j)`` (1-based),
    so ``W @ perp_vector(W) == 0`` and the result vanishes exactly when
    ``rank W < n - 1``.
    """
    A = as_matrix(W, "W")
    rows, n = A.shape
    if n != rows + 1:
        raise DimensionError(f"perp_vector needs an (n-1) x n matrix, got {A.shape}")
    out = np.empty(n)
    for j in range(n):
        minor = np.delete(A, j, axis=1)
        sign = -1.0 if (n + j + 1) % 2 else 1.0
        out[j] = sign * (np.linalg.det(minor) if rows else 1.0)
    return out


def last_row_cofactors(M) -> np.ndarray:
    """Cofactors of the last row, i.e. the last column of the adjugate.

    Satisfies ``M @ psi == det(M) * e_n``.
    """
    A = _square(M)
    n = A.shape[0]
    if n < 2:
        raise DimensionError("last_row_cofactors needs n >= 2")
    return perp_vector(A[:-1])


def kernel_vector(M) -> Tuple[np.ndarray, float]:
    """Unit vector minimizing ``||M v||`` and the attained residual.

    The smallest right singular vector is returned with its largest-magnitude
    component made positive, so the result is deterministic.
    """
    A = _square(M)
    _, s, vt = np.linalg.svd(A)
    v = vt[-1].copy()
    k = int(np.argmax(np.abs(v)))
    if v[k] < 0:
        v = -v
    return v, float(s[-1])


def det_scale(M, lam: float = 0.0) -> float:
    """Magnitude that ``det(M - lam E)`` is measured against."""
    A = np.asarray(M, dtype=float)
    return max(1.0, float(np.linalg.norm(A)) + abs(lam)) ** A.shape[0]


def _polish(A: np.ndarray, lam: float) -> Tuple[float, np.ndarray, float]:
    eye = np.eye(A.shape[0])
    u, s, vt = np.linalg.svd(A - lam * eye)
    v, w = vt[-1], u[:, -1]
    best = (lam, v, float(s[-1]))
    denom = float(w @ v)
    if abs(denom) > 1e-8:
        cand = lam + float(w @ (A - lam * eye) @ v) / denom
        s2 = np.linalg.svd(A - cand * eye, compute_uv=False)[-1]
        if s2 < best[2]:
            _, _, vt2 = np.linalg.svd(A - cand * eye)
            best = (cand, vt2[-1], float(s2))
    lam, v, res = best
    k = int(np.argmax(np.abs(v)))
    if v[k] < 0:
        v = -v
    return lam, v, res


def real_eigenpairs(M, tol: float = TOL_ID) -> List[Tuple[float, np.ndarray]]:
    """One ``(lambda, v)`` per distinct real eigenvalue, ascending in lambda.

    The characteristic polynomial of ``M / ||M||`` is built by
    Faddeev-LeVerrier, its real roots are isolated by Sturm sequences and
    refined by bisection, and the eigenvector is the kernel vector of
    ``M - lambda E`` after one Newton correction of lambda.  Pairs whose
    residual ``||M v - lambda v||`` exceeds ``tol * ||M||`` are dropped.
    """
    A = _square(M)
    n = A.shape[0]
    if n > EIGEN_SIZE_CAP:
        raise DimensionError(f"real_eigenpairs is limited to n <= {EIGEN_SIZE_CAP}")
    scale = float(np.linalg.norm(A))
    if scale == 0.0:
        v, _ = kernel_vector(A)
        return [(0.0, v)]
    roots = real_roots(charpoly(A / scale))
    pairs = []
    for r in roots:
        lam, v, res = _polish(A, r * scale)
        if res <= tol * scale:
            pairs.append((lam, v))
    return pairs


def _elementary_symmetric(values: Sequence[float]) -> np.ndarray:
    # e_0..e_k as coefficients of prod(1 + a t)
    e = np.zeros(len(values) + 1)
    e[0] = 1.0
    for i, a in enumerate(values, start=1):
        e[1 : i + 1] = e[1 : i + 1] + a * e[0:i]
    return e


def elementary_symmetric_matrix(alpha: Sequence[float]) -> np.ndarray:
    """Matrix whose ``(i, k)`` entry is ``e_i`` of alpha without ``alpha_k``.

    Rows are indexed by degree ``i = 0..n-1`` and columns by the omitted
    node; the determinant equals ``prod_{i<j} (alpha_i - alpha_j)``.
    """
    a = np.asarray(alpha, dtype=float).ravel()
    n = a.size
    if n < 1:
        raise DimensionError("need at least one node")
    S = np.empty((n, n))
    for k in range(n):
        S[:, k] = _elementary_symmetric(np.delete(a, k))[:n]
    return S


def vandermonde_product(alpha: Sequence[float]) -> float:
    """``prod_{i<j} (alpha_i - alpha_j)``."""
    a = np.asarray(alpha, dtype=float).ravel()
    out = 1.0
    for i in range(a.size):
        for j in range(i + 1, a.size):
            out *= a[i] - a[j]
    return out
