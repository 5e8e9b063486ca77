"""scikit-learn compatible reducers.

Rows of ``X`` are snapshots and columns grid nodes (row-major, x fastest),
the transpose of the column-per-snapshot snapshot matrix used elsewhere in
the package. Three-dimensional input ``(n_snapshots, ny, nx)`` is accepted
and flattened.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import Grid2D, SnapshotSeries
from .distance import sdf_series
from .errors import RankError
from .ftr import ftr_decompose, ftr_reconstruct
from .lowrank import thin_svd
from .profile import DEFAULT_SUPPORT_SIZE, eval_profile


def _rows(X):
    if isinstance(X, SnapshotSeries):
        return X.values.reshape(len(X), -1)
    X = check_array(X, allow_nd=True, ensure_min_samples=1)
    return X.reshape(X.shape[0], -1).astype(np.float64, copy=False)


def _check_modes(n, rank):
    if int(n) != n or not 0 <= n <= rank:
        raise RankError(f"n_modes={n!r} outside [0, {rank}]")
    return int(n)


class PODReducer(TransformerMixin, BaseEstimator):
    """Plain POD: project snapshots on the leading left singular vectors.

    The snapshots are not mean-centred, so for the training data
    ``inverse_transform(transform(X))`` is the rank-``n_modes`` truncated SVD.

    Parameters
    ----------
    n_modes : int
        Number of retained modes.
    """

    def __init__(self, n_modes=10):
        self.n_modes = n_modes

    def fit(self, X, y=None):
        R = _rows(X)
        F = thin_svd(R.T)
        n = _check_modes(self.n_modes, F.rank)
        self.components_ = F.U[:, :n].T.copy()
        self.singular_values_ = F.S.copy()
        self.n_features_in_ = R.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self)
        return _rows(X) @ self.components_.T

    def inverse_transform(self, A):
        check_is_fitted(self)
        A = check_array(A)
        return A @ self.components_


class FrontTransportReducer(TransformerMixin, BaseEstimator):
    """Front transport reduction ``q ~ f(phi_n)``.

    ``fit`` builds signed-distance level sets of every snapshot at
    ``threshold``, takes their leading ``n_modes`` spatial modes and fits a
    front-shape profile ``f``. ``transform`` returns the level-set mode
    amplitudes and ``inverse_transform`` maps amplitudes back to fields
    through ``f``.

    Parameters
    ----------
    threshold : float
        Field value marking the front.
    n_modes : int
        Number of level-set modes kept.
    grid : Grid2D, optional
        Geometry of the snapshots. Required for flat 2D input; for
        ``(n, ny, nx)`` arrays a unit-spacing grid is assumed when omitted.
    band : float, optional
        Sampling band half-width; default five grid spacings.
    n_support : int
        Support points of the tabulated profile.
    method : {"tree", "brute"}
        Nearest-segment search used for the distance fields.
    """

    def __init__(self, threshold=0.5, n_modes=10, grid=None, band=None,
                 n_support=DEFAULT_SUPPORT_SIZE, method="tree"):
        self.threshold = threshold
        self.n_modes = n_modes
        self.grid = grid
        self.band = band
        self.n_support = n_support
        self.method = method

    def _series(self, X, grid=None):
        if isinstance(X, SnapshotSeries):
            return X
        arr = np.asarray(X)
        grid = grid if grid is not None else self.grid
        if grid is None:
            if arr.ndim != 3:
                raise ValueError("flat input needs an explicit grid")
            ny, nx = arr.shape[1:]
            grid = Grid2D(nx, ny, float(nx - 1), float(ny - 1))
        R = _rows(X)
        return SnapshotSeries(grid, np.arange(R.shape[0], dtype=np.float64), R)

    def fit(self, X, y=None):
        s = self._series(X)
        model = ftr_decompose(s, self.threshold, band=self.band, M=self.n_support,
                              method=self.method)
        n = _check_modes(self.n_modes, model.rank)
        self.model_ = model
        self.grid_ = s.grid
        self.components_ = model.phi_factors.U[:, :n].T.copy()
        self.singular_values_ = model.phi_factors.S.copy()
        self.profile_ = model.profile
        self.n_features_in_ = s.grid.size
        return self

    def level_set(self, X):
        """Signed distance fields of ``X`` as rows."""
        check_is_fitted(self)
        s = self._series(X, self.grid_)
        phi = sdf_series(s, self.model_.threshold, method=self.method)
        return phi.values.reshape(len(phi), -1)

    def transform(self, X):
        return self.level_set(X) @ self.components_.T

    def inverse_transform(self, A):
        check_is_fitted(self)
        A = check_array(A)
        return eval_profile(self.profile_, A @ self.components_)

    def reconstruct(self, n=None) -> SnapshotSeries:
        """Training snapshots rebuilt from ``n`` modes (default ``n_modes``)."""
        check_is_fitted(self)
        return ftr_reconstruct(self.model_, self.n_modes if n is None else n)
