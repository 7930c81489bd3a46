"""Small dense linear algebra: LU solve, one-sided Jacobi SVD, 2-norm
condition number and truncated-SVD solve.

Matrices are plain 2-D numpy arrays. :func:`as_matrix` is the single entry
check (shape and finiteness) used by every routine here.
"""
from typing import NamedTuple

import numpy as np

from .errors import (DimensionMismatch, NoConvergence, SingularMatrix,
                     TruncationOutOfRange, ValidationError)

EPS = np.finfo(float).eps
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


class SvdFactors(NamedTuple):
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    def reconstruct(self):
        return (self.U * self.sigma) @ self.V.T


def as_matrix(A, dtype=None):
    """Return ``A`` as a finite 2-D array, raising on anything else."""
    A = np.asarray(A, dtype=dtype)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {A.shape}")
    if not np.issubdtype(A.dtype, np.inexact):
        A = A.astype(float)
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix has non-finite entries")
    return A


def _result_dtype(A, b):
    return np.result_type(A.dtype, b.dtype, float)


def lu_factor(A):
    """LU factorisation with partial pivoting, ``P A = L U``.

    Returns the packed factors (unit lower part below the diagonal, U on and
    above it) and the row permutation as an index array.

    Raises
    ------
    SingularMatrix
        If a pivot falls below ``eps * ||A||_inf``.
    """
    A = as_matrix(A)
    n, m = A.shape
    if n != m:
        raise DimensionMismatch(f"LU needs a square matrix, got {A.shape}")
    LU = A.astype(np.result_type(A.dtype, float), copy=True)
    perm = np.arange(n)
    threshold = EPS * np.abs(A).sum(axis=1).max() if n else 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(LU[k:, k])))
        if abs(LU[p, k]) <= threshold:
            raise SingularMatrix(
                f"pivot {abs(LU[p, k]):.3e} at step {k} below tolerance {threshold:.3e}")
        if p != k:
            LU[[k, p]] = LU[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        LU[k + 1:, k] /= LU[k, k]
        LU[k + 1:, k + 1:] -= np.outer(LU[k + 1:, k], LU[k, k + 1:])
    return LU, perm


def lu_solve(A, b):
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    Works for real and complex scalars; ``b`` may be a vector or a matrix of
    right-hand sides.
    """
    A = as_matrix(A)
    b = np.asarray(b)
    if b.shape[0] != A.shape[0] or b.ndim > 2:
        raise DimensionMismatch(f"A is {A.shape} but b has shape {b.shape}")
    LU, perm = lu_factor(A)
    x = b[perm].astype(_result_dtype(LU, b), copy=True)
    n = A.shape[0]
    for i in range(1, n):
        x[i] -= LU[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - LU[i, i + 1:] @ x[i + 1:]) / LU[i, i]
    return x


def _orthonormal_completion(Q, cols):
    # fills the listed columns of Q with unit vectors orthogonal to the rest
    m = Q.shape[0]
    keep = [c for c in range(Q.shape[1]) if c not in set(cols)]
    basis = [Q[:, c] for c in keep]
    candidates = iter(np.eye(m))
    for c in cols:
        while True:
            e = next(candidates).copy()
            for _ in range(2):
                for q in basis:
                    e -= (q @ e) * q
            nrm = np.linalg.norm(e)
            if nrm > 0.5:
                break
        Q[:, c] = e / nrm
        basis.append(Q[:, c])
    return Q


def _jacobi_tall(A):
    m, n = A.shape
    W = A.copy()
    V = np.eye(n)
    norms = np.einsum("ij,ij->j", W, W)
    for sweep in range(1, MAX_SWEEPS + 1):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha, beta = norms[p], norms[q]
                gamma = W[:, p] @ W[:, q]
                if gamma == 0.0 or abs(gamma) <= JACOBI_TOL * np.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                wp = W[:, p].copy()
                W[:, p] = c * wp - s * W[:, q]
                W[:, q] = s * wp + c * W[:, q]
                vp = V[:, p].copy()
                V[:, p] = c * vp - s * V[:, q]
                V[:, q] = s * vp + c * V[:, q]
                norms[p] = W[:, p] @ W[:, p]
                norms[q] = W[:, q] @ W[:, q]
        if not rotated:
            break
    else:
        raise NoConvergence(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")

    sigma = np.linalg.norm(W, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, W, V = sigma[order], W[:, order], V[:, order]
    U = np.zeros((m, n))
    small = []
    for k in range(n):
        if sigma[k] > 0.0 and sigma[k] > EPS * sigma[0] * 1e-3:
            U[:, k] = W[:, k] / sigma[k]
        else:
            small.append(k)
    if small:
        U = _orthonormal_completion(U, small)
    return SvdFactors(U, sigma, V)


def svd(A):
    """Thin SVD by cyclic one-sided (Hestenes) Jacobi rotations.

    Rotations orthogonalise the columns of ``A`` pairwise; a sweep that
    finds every pair with ``|a_p . a_q| <= 1e-14 ||a_p|| ||a_q||`` ends the
    iteration. Returns ``U`` (m x r), ``sigma`` (r, nonincreasing) and
    ``V`` (n x r) with ``r = min(m, n)``.
    """
    A = as_matrix(A)
    if np.iscomplexobj(A):
        raise ValidationError("svd supports real matrices only")
    m, n = A.shape
    if m >= n:
        return _jacobi_tall(A)
    U, sigma, V = _jacobi_tall(A.T)
    return SvdFactors(V, sigma, U)


def cond2(A):
    """2-norm condition number ``sigma_max / sigma_min``."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"cond2 needs a square matrix, got {A.shape}")
    sigma = svd(A).sigma
    if sigma[-1] == 0.0:
        raise SingularMatrix("smallest singular value is zero")
    return float(sigma[0] / sigma[-1])


def tsvd_solve(A, b, k, factors=None):
    """Truncated-SVD solution ``sum_{i<k} (u_i . b / sigma_i) v_i``.

    ``factors`` lets callers reuse a decomposition across several ``k``.
    """
    A = as_matrix(A)
    b = np.asarray(b, dtype=float)
    if b.shape != (A.shape[0],):
        raise DimensionMismatch(f"A is {A.shape} but b has shape {b.shape}")
    r = min(A.shape)
    if not 1 <= k <= r:
        raise TruncationOutOfRange(f"k={k} outside 1..{r}")
    U, sigma, V = factors if factors is not None else svd(A)
    if sigma[k - 1] == 0.0:
        raise SingularMatrix(f"sigma_{k} is zero; reduce the truncation")
    return V[:, :k] @ ((U[:, :k].T @ b) / sigma[:k])
