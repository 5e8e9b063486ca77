"""Signed distance to the extracted front.

The magnitude at each node is the minimum Euclidean distance to the
segments returned by :func:`frontrom.contour.extract_zero_level`; the sign
is negative where ``q < thr`` and positive elsewhere.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .contour import extract_zero_level, extract_zero_level_1d
from .core import Grid1D, Grid2D, SnapshotSeries
from .errors import EmptyContour

# nodes per block in the brute force scan, bounds peak memory
_CHUNK = 4096
# nearest segment midpoints inspected per node by the tree path
_K_NEAREST = 8


@dataclass(frozen=True, eq=False)
class LevelSetField:
    grid: Grid2D | Grid1D
    values: np.ndarray
    threshold: float


def _seg_dist(px, py, ax, ay, bx, by):
    # distance from points (px, py) to segments a-b, broadcasting
    dx = bx - ax
    dy = by - ay
    wx = px - ax
    wy = py - ay
    t = (wx * dx + wy * dy) / (dx * dx + dy * dy)
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(wx - t * dx, wy - t * dy)


def point_segment_distance(p, a, b) -> float:
    """Euclidean distance from ``p`` to the closed segment ``[a, b]``."""
    (px, py), (ax, ay), (bx, by) = p, a, b
    if ax == bx and ay == by:
        raise ValueError("degenerate segment: a == b")
    return float(_seg_dist(float(px), float(py), float(ax), float(ay),
                           float(bx), float(by)))


def unsigned_distance_brute(points, segments) -> np.ndarray:
    """Minimum distance from each point to any segment, full scan."""
    points = np.asarray(points, dtype=np.float64)
    seg = np.asarray(segments, dtype=np.float64)
    ax, ay = seg[:, 0, 0], seg[:, 0, 1]
    bx, by = seg[:, 1, 0], seg[:, 1, 1]
    out = np.empty(points.shape[0])
    for lo in range(0, points.shape[0], _CHUNK):
        p = points[lo:lo + _CHUNK]
        d = _seg_dist(p[:, :1], p[:, 1:], ax, ay, bx, by)
        out[lo:lo + _CHUNK] = d.min(axis=1)
    return out


def unsigned_distance_tree(points, segments) -> np.ndarray:
    """Same result as :func:`unsigned_distance_brute`, pruned with a KD-tree.

    Each point is checked against the segments with the nearest midpoints.
    A segment whose midpoint is farther than ``d_K`` cannot be closer than
    ``d_K - max_half_length``; points where that bound does not beat the
    best candidate fall back to the full scan, so the result is exact.
    """
    points = np.asarray(points, dtype=np.float64)
    seg = np.asarray(segments, dtype=np.float64)
    nseg = seg.shape[0]
    k = min(_K_NEAREST, nseg)
    if k == nseg:
        return unsigned_distance_brute(points, seg)
    mid = 0.5 * (seg[:, 0] + seg[:, 1])
    half = 0.5 * np.hypot(*(seg[:, 1] - seg[:, 0]).T)
    dmid, idx = cKDTree(mid).query(points, k=k)
    s = seg[idx]
    d = _seg_dist(points[:, :1], points[:, 1:], s[..., 0, 0], s[..., 0, 1],
                  s[..., 1, 0], s[..., 1, 1])
    best = d.min(axis=1)
    unsure = best > dmid[:, -1] - half.max()
    if np.any(unsure):
        best[unsure] = unsigned_distance_brute(points[unsure], seg)
    return best


_METHODS = {"brute": unsigned_distance_brute, "tree": unsigned_distance_tree}


def signed_distance_field(field, grid, thr, method="tree") -> LevelSetField:
    """Signed distance to the ``thr`` level of ``field``.

    Parameters
    ----------
    field : array_like
        Nodal values shaped like ``grid.shape``.
    grid : Grid2D or Grid1D
    thr : float
        Threshold defining the front.
    method : {"tree", "brute"}
        Nearest-segment search. Both give identical distances.

    Raises
    ------
    EmptyContour
        If the field never crosses ``thr``.
    """
    f = np.asarray(field, dtype=np.float64).reshape(grid.shape)
    thr = float(thr)
    if isinstance(grid, Grid1D):
        xc = extract_zero_level_1d(f, grid, thr)
        if xc.size == 0:
            raise EmptyContour(threshold=thr)
        dist = np.abs(grid.x[:, None] - xc[None, :]).min(axis=1)
    else:
        segs = extract_zero_level(f, grid, thr)
        if len(segs) == 0:
            raise EmptyContour(threshold=thr)
        X, Y = grid.meshgrid()
        pts = np.column_stack([X.ravel(), Y.ravel()])
        dist = _METHODS[method](pts, segs.segments).reshape(grid.shape)
    # same classification as the contour extraction; exact hits count as +0
    values = np.where(f == thr, 0.0, np.where(f > thr, dist, -dist))
    values.flags.writeable = False
    return LevelSetField(grid, values, thr)


def _default_threads():
    try:
        n = int(os.environ.get("FTR_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else 1


def sdf_series(s: SnapshotSeries, thr, method="tree", n_jobs=None) -> SnapshotSeries:
    """Signed distance fields for every snapshot of ``s``.

    ``n_jobs`` threads process snapshots concurrently (default from the
    ``FTR_THREADS`` environment variable, else 1). Output order is the
    snapshot order regardless of scheduling.
    """
    n_jobs = _default_threads() if n_jobs is None else max(1, int(n_jobs))

    def one(k):
        try:
            return signed_distance_field(s.values[k], s.grid, thr, method).values
        except EmptyContour:
            raise EmptyContour(index=k, threshold=thr) from None

    if n_jobs == 1:
        fields = [one(k) for k in range(len(s))]
    else:
        with ThreadPoolExecutor(n_jobs) as ex:
            fields = list(ex.map(one, range(len(s))))
    return s.with_values(np.stack(fields))
