"""Sampling grids, snapshot containers and snapshot-matrix conversions.

Fields on a :class:`Grid2D` are stored as arrays of shape ``(ny, nx)`` so
that ``field[j, i]`` is the value at ``(x_i, y_j)``. Flattening is row-major
with x fastest, i.e. node ``(i, j)`` maps to matrix row ``j * nx + i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid on ``[0, Lx]`` with ``nx`` nodes (both ends included)."""

    nx: int
    Lx: float

    def __post_init__(self):
        if int(self.nx) != self.nx or self.nx < 2:
            raise ValueError(f"nx must be an integer >= 2, got {self.nx!r}")
        if not np.isfinite(self.Lx) or self.Lx <= 0:
            raise ValueError(f"Lx must be positive, got {self.Lx!r}")

    @property
    def hx(self) -> float:
        return self.Lx / (self.nx - 1)

    @property
    def shape(self) -> tuple[int]:
        return (self.nx,)

    @property
    def size(self) -> int:
        return self.nx

    @property
    def h(self) -> float:
        return self.hx

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.nx) * self.hx


@dataclass(frozen=True)
class Grid2D:
    """Uniform Cartesian grid on ``[0, Lx] x [0, Ly]``.

    Parameters
    ----------
    nx, ny : int
        Node counts along x and y, at least 2 each.
    Lx, Ly : float
        Domain extents. Node ``(0, 0)`` sits at the origin and node
        ``(nx - 1, ny - 1)`` at ``(Lx, Ly)``.
    """

    nx: int
    ny: int
    Lx: float
    Ly: float

    def __post_init__(self):
        for name in ("nx", "ny"):
            n = getattr(self, name)
            if int(n) != n or n < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {n!r}")
        for name in ("Lx", "Ly"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValueError(f"{name} must be positive, got {v!r}")

    @property
    def hx(self) -> float:
        return self.Lx / (self.nx - 1)

    @property
    def hy(self) -> float:
        return self.Ly / (self.ny - 1)

    @property
    def h(self) -> float:
        """Largest spacing, ``max(hx, hy)``."""
        return max(self.hx, self.hy)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def size(self) -> int:
        return self.nx * self.ny

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.nx) * self.hx

    @property
    def y(self) -> np.ndarray:
        return np.arange(self.ny) * self.hy

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinates as two ``(ny, nx)`` arrays."""
        return np.meshgrid(self.x, self.y, indexing="xy")

    def node(self, i: int, j: int) -> tuple[float, float]:
        return (i * self.hx, j * self.hy)


Grid = Union[Grid1D, Grid2D]


def make_grid(nx, ny, Lx, Ly) -> Grid2D:
    return Grid2D(int(nx), int(ny), float(Lx), float(Ly))


@dataclass(frozen=True, eq=False)
class SnapshotSeries:
    """Ordered field samples ``q(x, t_k)`` on a fixed grid.

    ``values`` has shape ``(N,) + grid.shape`` and is stored read-only as
    float64.
    """

    grid: Grid
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=np.float64).reshape(-1)
        values = np.array(self.values, dtype=np.float64)
        if times.size < 1:
            raise ValueError("a snapshot series needs at least one snapshot")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        expected = (times.size,) + self.grid.shape
        if values.shape != expected:
            if values.size == np.prod(expected):
                values = values.reshape(expected)
            else:
                raise ValueError(
                    f"values of shape {values.shape} do not match {expected}"
                )
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.times.size

    def __getitem__(self, k) -> np.ndarray:
        return self.values[k]

    def with_values(self, values) -> "SnapshotSeries":
        """Same grid and times, new field values."""
        return SnapshotSeries(self.grid, self.times, values)

    @property
    def value_range(self) -> tuple[float, float]:
        return float(self.values.min()), float(self.values.max())


def series_to_matrix(s: SnapshotSeries) -> np.ndarray:
    """Column-per-snapshot matrix of shape ``(grid.size, N)``."""
    return np.ascontiguousarray(s.values.reshape(len(s), -1).T)


def matrix_to_series(X, grid: Grid, times) -> SnapshotSeries:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != grid.size:
        raise ValueError(f"matrix of shape {X.shape} does not fit grid of {grid.size} nodes")
    return SnapshotSeries(grid, times, X.T.reshape((X.shape[1],) + grid.shape))
