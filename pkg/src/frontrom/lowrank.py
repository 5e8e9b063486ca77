"""Thin SVD, rank-n truncation and singular spectra of snapshot matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import RankError


@dataclass(frozen=True, eq=False)
class SVDFactors:
    """Thin SVD ``X = U @ diag(S) @ V.T``.

    For a column-per-snapshot matrix the columns of ``U`` are the spatial
    modes and ``S[k] * V[:, k]`` the temporal coefficients of mode ``k``.
    """

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    @property
    def rank(self) -> int:
        """Number of stored singular triplets, ``min(rows, cols)``."""
        return self.S.size

    @property
    def shape(self) -> tuple[int, int]:
        return (self.U.shape[0], self.V.shape[0])


@dataclass(frozen=True, eq=False)
class LowRankApprox:
    n: int
    Xn: np.ndarray


def thin_svd(X) -> SVDFactors:
    """Economy SVD of a finite 2D array."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2D matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("snapshot matrix contains non-finite entries")
    # gesvd is slower than the default gesdd but keeps tiny singular values
    # accurate relative to sigma_1, which the rank tests rely on.
    U, S, Vt = la.svd(X, full_matrices=False, lapack_driver="gesvd")
    return SVDFactors(U, S, Vt.T)


def _check_n(F: SVDFactors, n, upper):
    if int(n) != n or n < 0 or n > upper:
        raise RankError(f"mode count {n!r} outside [0, {upper}]")
    return int(n)


def truncate(F: SVDFactors, n) -> LowRankApprox:
    """Rank-``n`` reconstruction ``sum_{k<n} S[k] u_k v_k^T``."""
    n = _check_n(F, n, F.rank)
    Xn = (F.U[:, :n] * F.S[:n]) @ F.V[:, :n].T
    return LowRankApprox(n, Xn)


def spectrum(F: SVDFactors) -> np.ndarray:
    """Singular values normalised by the spectral norm ``S[0]``."""
    if F.rank == 0 or F.S[0] <= 0:
        raise ValueError("spectrum of a zero matrix is undefined")
    return F.S / F.S[0]


def spectral_truncation_error(F: SVDFactors, n) -> float:
    """Spectral-norm error of the rank-``n`` truncation, ``S[n]``.

    By the Eckart-Young theorem this is ``||X - X_n||_2``.
    """
    n = _check_n(F, n, F.rank - 1)
    return float(F.S[n])


def numerical_rank(F: SVDFactors, rtol=1e-10) -> int:
    """Number of singular values with ``S[k] / S[0] > rtol``."""
    if F.rank == 0 or F.S[0] == 0:
        return 0
    return int(np.count_nonzero(F.S / F.S[0] > rtol))


def spectral_norm(A) -> float:
    """Largest singular value of ``A``.

    Tall or wide matrices go through the smaller Gram matrix, which is much
    cheaper than a full SVD for snapshot matrices with few columns.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.size == 0 or not np.any(A):
        return 0.0
    if min(A.shape) > 64 or A.shape[0] == A.shape[1]:
        return float(la.svdvals(A)[0])
    G = A.T @ A if A.shape[0] > A.shape[1] else A @ A.T
    k = G.shape[0] - 1
    top = la.eigvalsh(G, subset_by_index=[k, k])[0]
    return float(np.sqrt(max(top, 0.0)))
