"""Front-shape functions ``f`` with ``q ~ f(phi)``.

Contains the analytic tanh front and a tabulated profile estimated from
``(phi, q)`` samples collected in a band around the front.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_SUPPORT_SIZE = 201
#: default band half-width in units of the largest grid spacing
DEFAULT_BAND_CELLS = 5.0


@dataclass(frozen=True)
class TanhProfile:
    """Analytic front ``f(phi) = (tanh(phi / lam) + 1) / 2``."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"front width must be positive, got {self.lam!r}")

    def __call__(self, phi):
        return 0.5 * (np.tanh(np.asarray(phi, dtype=np.float64) / self.lam) + 1.0)

    def derivative(self, phi):
        c = np.cosh(np.asarray(phi, dtype=np.float64) / self.lam)
        return 0.5 / (self.lam * c * c)


def tanh_profile(lam) -> TanhProfile:
    return TanhProfile(float(lam))


@dataclass(frozen=True, eq=False)
class SampleSet:
    phi: np.ndarray
    q: np.ndarray

    def __len__(self) -> int:
        return self.phi.size


@dataclass(frozen=True, eq=False)
class FrontProfile:
    """Piecewise-linear front shape tabulated on ``support``.

    Evaluation is clamped: below the first support point it returns
    ``values[0]``, above the last one ``values[-1]``.
    """

    support: np.ndarray
    values: np.ndarray
    band: float

    def __post_init__(self):
        support = np.asarray(self.support, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if support.ndim != 1 or support.size < 2:
            raise ValueError("a profile needs at least two support points")
        if values.shape != support.shape:
            raise ValueError("support and values differ in length")
        if np.any(np.diff(support) <= 0):
            raise ValueError("support must be strictly increasing")
        if not self.band > 0:
            raise ValueError(f"band must be positive, got {self.band!r}")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "values", values)

    @property
    def M(self) -> int:
        return self.support.size

    def __call__(self, phi):
        return eval_profile(self, phi)


def default_band(grid) -> float:
    return DEFAULT_BAND_CELLS * grid.h


def collect_front_samples(phi, q, band) -> SampleSet:
    """All nodes with ``|phi| <= band`` paired with their ``q`` values.

    ``phi`` may be a :class:`~frontrom.distance.LevelSetField` or an array;
    ``q`` must have the same number of entries.
    """
    if not band > 0:
        raise ValueError(f"band must be positive, got {band!r}")
    phi = np.asarray(getattr(phi, "values", phi), dtype=np.float64).ravel()
    q = np.asarray(q, dtype=np.float64).ravel()
    if phi.shape != q.shape:
        raise ValueError("phi and q differ in size")
    keep = np.abs(phi) <= band
    return SampleSet(phi[keep], q[keep])


def fit_profile(samples: SampleSet, M=DEFAULT_SUPPORT_SIZE, band=None) -> FrontProfile:
    """Binned-mean estimate of ``f`` on ``M`` equispaced points in ``[-band, band]``.

    Each sample falls into the bin of its nearest support point; the bin
    value is the mean of its ``q`` samples. Empty bins are filled by linear
    interpolation between occupied neighbours, or by the nearest occupied
    value at the ends.
    """
    if int(M) != M or M < 2:
        raise ValueError(f"support size must be an integer >= 2, got {M!r}")
    M = int(M)
    if len(samples) == 0:
        raise ValueError("no samples to fit; the band may be too small")
    if band is None:
        band = float(np.max(np.abs(samples.phi)))
    if not band > 0:
        raise ValueError(f"band must be positive, got {band!r}")
    # canonical order so that the bin sums do not depend on input order
    order = np.lexsort((samples.q, samples.phi))
    phi, q = samples.phi[order], samples.q[order]
    support = np.linspace(-band, band, M)
    mids = 0.5 * (support[1:] + support[:-1])
    bins = np.searchsorted(mids, phi, side="right")
    counts = np.bincount(bins, minlength=M)
    sums = np.bincount(bins, weights=q, minlength=M)
    full = counts > 0
    values = np.empty(M)
    values[full] = sums[full] / counts[full]
    # a mean can drift past the data bounds by an ulp
    values[full] = np.clip(values[full], q.min(), q.max())
    if not np.all(full):
        values[~full] = np.interp(support[~full], support[full], values[full])
    return FrontProfile(support, values, float(band))


def eval_profile(p: FrontProfile, phi):
    """Clamped piecewise-linear interpolation of the tabulated profile."""
    out = np.interp(np.asarray(phi, dtype=np.float64), p.support, p.values)
    return out if out.ndim else float(out)


def profile_derivative(p: FrontProfile) -> np.ndarray:
    """``f'`` on the support: central differences inside, one-sided at the ends."""
    return np.gradient(p.values, p.support, edge_order=1)


def profile_lipschitz(p: FrontProfile) -> float:
    """Largest slope magnitude of the piecewise-linear profile."""
    return float(np.max(np.abs(np.diff(p.values) / np.diff(p.support))))
