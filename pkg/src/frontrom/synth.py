"""Synthetic snapshot generators with analytically known fronts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Grid1D, Grid2D, SnapshotSeries
from .lowrank import numerical_rank, thin_svd
from .core import series_to_matrix
from .profile import tanh_profile

PHI_KINDS = ("signed_distance", "paraboloid")


@dataclass(frozen=True)
class DiscTrajectory:
    """Disc of radius ``0.15 L`` whose centre runs a circle of radius ``L / 4``.

    The centre is ``L * (0.5 + cos(2 pi t) / 4, 0.5 + sin(2 pi t) / 4)``; one
    revolution per unit time.
    """

    L: float = 1.0

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError(f"domain size must be positive, got {self.L!r}")

    @property
    def R(self) -> float:
        return 0.15 * self.L

    def center(self, t):
        t = np.asarray(t, dtype=np.float64)
        w = 2.0 * np.pi * t
        return self.L * (0.5 + 0.25 * np.cos(w)), self.L * (0.5 + 0.25 * np.sin(w))


def _check_counts(**counts):
    for name, n in counts.items():
        if int(n) != n or n < 2:
            raise ValueError(f"{name} must be an integer >= 2, got {n!r}")


def gen_advection_1d(L=1.0, T=1.0, c=0.5, lam=0.005, nx=500, nt=50):
    """Front ``q = f_lam(x - c t)`` advected at constant speed.

    Returns ``(q, phi)`` series on ``nx`` nodes of ``[0, L]`` and ``nt``
    times spanning ``[0, T]``.
    """
    for name, v in dict(L=L, T=T, c=c, lam=lam).items():
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v!r}")
    _check_counts(nx=nx, nt=nt)
    grid = Grid1D(int(nx), float(L))
    times = np.linspace(0.0, T, int(nt))
    phi = grid.x[None, :] - c * times[:, None]
    q = tanh_profile(lam)(phi)
    return SnapshotSeries(grid, times, q), SnapshotSeries(grid, times, phi)


def disc_times(nt):
    # one full period sampled without repeating t = 1 (identical to t = 0)
    return np.arange(nt) / nt


def gen_moving_disc(traj=None, lam=0.01, nx=256, nt=60, phi_kind="signed_distance", ny=None):
    """Disc moving on a circle, ``q = f_lam(|x - x0(t)| - R)``.

    ``phi_kind`` selects the returned level-set encoding of the same front:
    the signed distance ``|x - x0| - R`` or the paraboloid
    ``(|x - x0|^2 - R^2) / (2 R)``. ``q`` does not depend on it.
    """
    traj = DiscTrajectory() if traj is None else traj
    if phi_kind not in PHI_KINDS:
        raise ValueError(f"phi_kind must be one of {PHI_KINDS}, got {phi_kind!r}")
    if not lam > 0:
        raise ValueError(f"front width must be positive, got {lam!r}")
    ny = nx if ny is None else ny
    _check_counts(nx=nx, ny=ny, nt=nt)
    grid = Grid2D(int(nx), int(ny), traj.L, traj.L)
    times = disc_times(int(nt))
    X, Y = grid.meshgrid()
    cx, cy = traj.center(times)
    r2 = (X[None] - cx[:, None, None]) ** 2 + (Y[None] - cy[:, None, None]) ** 2
    sd = np.sqrt(r2) - traj.R
    q = tanh_profile(lam)(sd)
    if phi_kind == "paraboloid":
        phi = (r2 - traj.R ** 2) / (2.0 * traj.R)
    else:
        phi = sd
    return SnapshotSeries(grid, times, q), SnapshotSeries(grid, times, phi)


def gen_merging_discs(L=1.0, R1=None, R2=None, lam=0.01, nx=256, nt=40, return_phi=False):
    """Two discs approaching each other until they coincide.

    Centres move linearly from ``(0.3 L, 0.5 L)`` and ``(0.7 L, 0.5 L)`` at
    ``t = 0`` to ``(0.5 L, 0.5 L)`` at ``t = 1``. The front is the boundary
    of the union, so it changes from two curves to one mid-series.
    """
    R1 = 0.12 * L if R1 is None else R1
    R2 = 0.12 * L if R2 is None else R2
    for name, v in dict(L=L, R1=R1, R2=R2, lam=lam).items():
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v!r}")
    _check_counts(nx=nx, nt=nt)
    if 0.4 * L <= R1 + R2:
        raise ValueError("discs must start disjoint: need R1 + R2 < 0.4 L")
    grid = Grid2D(int(nx), int(nx), float(L), float(L))
    times = np.linspace(0.0, 1.0, int(nt))
    X, Y = grid.meshgrid()
    x1 = L * (0.3 + 0.2 * times)
    x2 = L * (0.7 - 0.2 * times)
    yc = 0.5 * L
    d1 = np.hypot(X[None] - x1[:, None, None], Y[None] - yc) - R1
    d2 = np.hypot(X[None] - x2[:, None, None], Y[None] - yc) - R2
    phi = np.minimum(d1, d2)
    q = SnapshotSeries(grid, times, tanh_profile(lam)(phi))
    if return_phi:
        return q, SnapshotSeries(grid, times, phi)
    return q


def rank_of_stack(s: SnapshotSeries, rtol=1e-10) -> int:
    """Count of normalised singular values of the snapshot matrix above ``rtol``."""
    return numerical_rank(thin_svd(series_to_matrix(s)), rtol)


def rank_of_paraboloid_stack(traj=None, nx=256, nt=60, rtol=1e-10) -> int:
    """Numerical rank of the paraboloid level-set stack of the moving disc."""
    _, phi = gen_moving_disc(traj, nx=nx, nt=nt, phi_kind="paraboloid")
    return rank_of_stack(phi, rtol)
