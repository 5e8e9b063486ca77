"""Zero-level extraction of ``q - thr`` by marching squares.

Crossings are placed on grid edges by linear interpolation of the nodal
values. Each cell contributes 0, 1 or 2 line segments; saddle cells are
resolved by the side of the cell-centre average.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Grid1D, Grid2D

#: Relative size of the nudge applied to nodes lying exactly on the threshold.
EXACT_THRESHOLD_EPS = 1e-12

# Edge slots within a cell.
_BOTTOM, _RIGHT, _TOP, _LEFT = range(4)

# Segment table for saddle cells, keyed by (case, centre_is_hot). Each
# segment cuts off the corner whose side differs from the cell centre.
_SADDLE_PAIRS = {
    (5, True): ((_BOTTOM, _RIGHT), (_TOP, _LEFT)),
    (5, False): ((_BOTTOM, _LEFT), (_RIGHT, _TOP)),
    (10, True): ((_BOTTOM, _LEFT), (_RIGHT, _TOP)),
    (10, False): ((_BOTTOM, _RIGHT), (_TOP, _LEFT)),
}


@dataclass(frozen=True, eq=False)
class SegmentList:
    """Unordered set of line segments, ``segments[k] = [[xa, ya], [xb, yb]]``.

    ``out_of_range`` is set when the threshold lies outside the field's
    value range, i.e. no front can exist.
    """

    segments: np.ndarray
    out_of_range: bool = False

    def __len__(self) -> int:
        return self.segments.shape[0]

    @property
    def lengths(self) -> np.ndarray:
        d = self.segments[:, 1] - self.segments[:, 0]
        return np.hypot(d[:, 0], d[:, 1])

    def total_length(self) -> float:
        return float(self.lengths.sum())


def crossing_on_edge(q_a, q_b, thr):
    """Fraction ``s`` along ``a -> b`` where the linear interpolant hits ``thr``.

    Works elementwise on arrays. Raises ``ValueError`` if any pair does not
    straddle the threshold.
    """
    q_a = np.asarray(q_a, dtype=np.float64)
    q_b = np.asarray(q_b, dtype=np.float64)
    if np.any((q_a - thr) * (q_b - thr) >= 0):
        raise ValueError("edge values do not straddle the threshold")
    s = (thr - q_a) / (q_b - q_a)
    return s if s.ndim else float(s)


def _nudge(field, thr):
    field = np.asarray(field, dtype=np.float64)
    on = field == thr
    if np.any(on):
        span = float(field.max() - field.min())
        field = np.where(on, thr + EXACT_THRESHOLD_EPS * span, field)
    return field


def _edge_points(f, thr, grid):
    """Crossing coordinates on all horizontal and vertical edges (NaN if none)."""
    hot = f >= thr
    ny, nx = f.shape
    xs, ys = grid.x, grid.y

    # horizontal edges (i, j) -> (i + 1, j), shape (ny, nx - 1)
    hmask = hot[:, :-1] != hot[:, 1:]
    hx = np.full((ny, nx - 1), np.nan)
    if np.any(hmask):
        s = crossing_on_edge(f[:, :-1][hmask], f[:, 1:][hmask], thr)
        ii = np.nonzero(hmask)[1]
        hx[hmask] = xs[ii] + s * (xs[ii + 1] - xs[ii])
    hy = np.where(hmask, ys[:, None], np.nan)

    # vertical edges (i, j) -> (i, j + 1), shape (ny - 1, nx)
    vmask = hot[:-1, :] != hot[1:, :]
    vy = np.full((ny - 1, nx), np.nan)
    if np.any(vmask):
        s = crossing_on_edge(f[:-1, :][vmask], f[1:, :][vmask], thr)
        jj = np.nonzero(vmask)[0]
        vy[vmask] = ys[jj] + s * (ys[jj + 1] - ys[jj])
    vx = np.where(vmask, xs[None, :], np.nan)
    return (hx, hy), (vx, vy), hot


def extract_zero_level(field, grid: Grid2D, thr) -> SegmentList:
    """Segments approximating ``{field == thr}`` on a 2D grid.

    Parameters
    ----------
    field : array_like, shape (ny, nx)
        Nodal values.
    grid : Grid2D
    thr : float
        Absolute threshold in field units.

    Returns
    -------
    SegmentList
        Sorted by cell index (row-major, x fastest), then by position within
        the cell's segment table.
    """
    f = np.asarray(field, dtype=np.float64).reshape(grid.shape)
    if not np.all(np.isfinite(f)):
        raise ValueError("field contains non-finite values")
    thr = float(thr)
    if thr < f.min() or thr > f.max():
        return SegmentList(np.empty((0, 2, 2)), out_of_range=True)
    f = _nudge(f, thr)
    (hx, hy), (vx, vy), hot = _edge_points(f, thr, grid)

    bl, br = hot[:-1, :-1], hot[:-1, 1:]
    tl, tr = hot[1:, :-1], hot[1:, 1:]
    case = bl * 1 + br * 2 + tr * 4 + tl * 8

    # per-cell edge crossing coordinates, slot order bottom/right/top/left
    ex = np.stack([hx[:-1, :], vx[:, 1:], hx[1:, :], vx[:, :-1]], axis=-1)
    ey = np.stack([hy[:-1, :], vy[:, 1:], hy[1:, :], vy[:, :-1]], axis=-1)

    active = (case != 0) & (case != 15)
    saddle = (case == 5) | (case == 10)
    out = []
    order = []
    ncx = grid.nx - 1

    plain = active & ~saddle
    pj, pi = np.nonzero(plain)
    if pj.size:
        crosses = ~np.isnan(ex[pj, pi])
        # exactly two crossing slots per non-saddle cell
        slots = np.nonzero(crosses)[1].reshape(-1, 2)
        a = np.stack([ex[pj, pi, slots[:, 0]], ey[pj, pi, slots[:, 0]]], axis=-1)
        b = np.stack([ex[pj, pi, slots[:, 1]], ey[pj, pi, slots[:, 1]]], axis=-1)
        out.append(np.stack([a, b], axis=1))
        order.append(np.stack([pj * ncx + pi, np.zeros_like(pj)], axis=1))

    sj, si = np.nonzero(saddle)
    if sj.size:
        centre = 0.25 * (f[sj, si] + f[sj, si + 1] + f[sj + 1, si] + f[sj + 1, si + 1])
        for k, (j, i) in enumerate(zip(sj, si)):
            pairs = _SADDLE_PAIRS[(int(case[j, i]), bool(centre[k] >= thr))]
            for slot, (p, q) in enumerate(pairs):
                out.append(np.array([[[ex[j, i, p], ey[j, i, p]],
                                      [ex[j, i, q], ey[j, i, q]]]]))
                order.append(np.array([[j * ncx + i, slot]]))

    if not out:
        return SegmentList(np.empty((0, 2, 2)))
    segs = np.concatenate(out, axis=0)
    keys = np.concatenate(order, axis=0)
    perm = np.lexsort((keys[:, 1], keys[:, 0]))
    segs = segs[perm]
    d = segs[:, 1] - segs[:, 0]
    segs = segs[(d[:, 0] != 0) | (d[:, 1] != 0)]
    return SegmentList(np.ascontiguousarray(segs))


def extract_zero_level_1d(field, grid: Grid1D, thr) -> np.ndarray:
    """Crossing abscissae of ``field == thr`` on a 1D grid (sorted)."""
    f = np.asarray(field, dtype=np.float64).reshape(grid.shape)
    thr = float(thr)
    if thr < f.min() or thr > f.max():
        return np.empty(0)
    f = _nudge(f, thr)
    hot = f >= thr
    idx = np.nonzero(hot[:-1] != hot[1:])[0]
    if idx.size == 0:
        return np.empty(0)
    s = crossing_on_edge(f[idx], f[idx + 1], thr)
    x = grid.x
    return x[idx] + s * (x[idx + 1] - x[idx])


def count_components(segs: SegmentList) -> int:
    """Number of connected curves, joining segments that share an endpoint.

    Endpoints on a shared grid edge are computed once per edge, so matching
    is exact.
    """
    if len(segs) == 0:
        return 0
    pts = segs.segments.reshape(-1, 2)
    _, ids = np.unique(pts, axis=0, return_inverse=True)
    ids = ids.reshape(-1, 2)
    n = int(ids.max()) + 1
    adj = coo_matrix((np.ones(len(ids)), (ids[:, 0], ids[:, 1])), shape=(n, n))
    ncomp, _ = connected_components(adj, directed=False)
    return int(ncomp)


def count_row_crossings(field, thr) -> np.ndarray:
    """Number of threshold crossings along each horizontal grid line.

    Used to quantify staircasing: a clean front crosses a grid line once per
    front passage, while a staircased one crosses it several times.
    """
    f = np.asarray(field, dtype=np.float64)
    hot = f >= thr
    return np.count_nonzero(hot[..., :-1] != hot[..., 1:], axis=-1)


def count_row_turns(field, tol) -> np.ndarray:
    """Significant turning points along each horizontal grid line.

    A turn is a reversal of direction by more than ``tol`` from the running
    extreme, so noise below ``tol`` is ignored. A disc-shaped dip gives one
    turn per line through it; a staircased front adds spurious ones.
    """
    f = np.asarray(field, dtype=np.float64)
    lead = f.shape[:-1]
    f = f.reshape(-1, f.shape[-1])
    rows = f.shape[0]
    direction = np.zeros(rows, dtype=np.int8)
    lo = f[:, 0].copy()
    hi = f[:, 0].copy()
    turns = np.zeros(rows, dtype=np.int64)
    for v in f.T[1:]:
        up, down, flat = direction == 1, direction == -1, direction == 0
        # rising: track the max, turn when dropping more than tol below it
        hi = np.where(up & (v > hi), v, hi)
        rev_dn = up & (hi - v > tol)
        # falling: track the min, turn when rising more than tol above it
        lo = np.where(down & (v < lo), v, lo)
        rev_up = down & (v - lo > tol)
        turns += rev_dn | rev_up
        # undecided: pick a direction once the excursion exceeds tol
        start_up = flat & (v - lo > tol)
        start_dn = flat & ~start_up & (hi - v > tol)
        still = flat & ~start_up & ~start_dn
        lo = np.where(still, np.minimum(lo, v), lo)
        hi = np.where(still, np.maximum(hi, v), hi)
        direction = np.where(rev_dn | start_dn, -1,
                             np.where(rev_up | start_up, 1, direction)).astype(np.int8)
        lo = np.where(rev_dn | start_dn, v, lo)
        hi = np.where(rev_up | start_up, v, hi)
    return turns.reshape(lead)
