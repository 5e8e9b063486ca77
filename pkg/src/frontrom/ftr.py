"""Front transport reconstruction ``q ~ f(phi_n)`` and the POD baseline.

The pipeline thresholds every snapshot, turns the front into a signed
distance field ``phi``, factors the stacked ``phi`` snapshots with a thin SVD
and fits one front-shape profile ``f`` from samples pooled over all
snapshots. Reconstruction with ``n`` modes evaluates ``f`` on the rank-``n``
truncation of ``phi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import SnapshotSeries, matrix_to_series, series_to_matrix
from .distance import sdf_series
from .errors import RankError, ThresholdOutOfRange
from .lowrank import SVDFactors, spectral_norm, thin_svd, truncate
from .profile import (
    DEFAULT_SUPPORT_SIZE,
    FrontProfile,
    collect_front_samples,
    default_band,
    eval_profile,
    fit_profile,
    profile_derivative,
)


@dataclass(frozen=True, eq=False)
class FTRModel:
    threshold: float
    phi_factors: SVDFactors
    profile: FrontProfile
    grid: object
    times: np.ndarray

    @property
    def rank(self) -> int:
        return self.phi_factors.rank

    def phi_series(self, n=None) -> SnapshotSeries:
        """Level-set snapshots truncated to ``n`` modes (all modes by default)."""
        n = self.rank if n is None else n
        return matrix_to_series(truncate(self.phi_factors, n).Xn, self.grid, self.times)


def check_threshold(s: SnapshotSeries, thr) -> float:
    lo, hi = s.value_range
    thr = float(thr)
    if not lo <= thr <= hi:
        raise ThresholdOutOfRange(thr, lo, hi)
    return thr


def ftr_decompose(s: SnapshotSeries, thr, band=None, M=DEFAULT_SUPPORT_SIZE,
                  phi=None, method="tree", n_jobs=None) -> FTRModel:
    """Build the level-set / front-profile model of a snapshot series.

    Parameters
    ----------
    s : SnapshotSeries
        Snapshots of ``q``.
    thr : float
        Absolute threshold in units of ``q`` marking the front.
    band : float, optional
        Half-width of the sampling band ``|phi| <= band``; defaults to five
        grid spacings.
    M : int
        Number of support points of the fitted profile.
    phi : SnapshotSeries, optional
        Externally supplied level-set snapshots (e.g. an analytic
        paraboloid). When given, the signed-distance construction is skipped.
    method, n_jobs
        Passed to :func:`frontrom.distance.sdf_series`.

    Raises
    ------
    ThresholdOutOfRange
        If ``thr`` lies outside the value range of the data.
    EmptyContour
        If some snapshot has no front; ``index`` names it.
    """
    thr = check_threshold(s, thr)
    band = default_band(s.grid) if band is None else float(band)
    if phi is None:
        phi = sdf_series(s, thr, method=method, n_jobs=n_jobs)
    elif phi.values.shape != s.values.shape:
        raise ValueError("supplied level-set series does not match the data")
    samples = collect_front_samples(phi.values, s.values, band)
    profile = fit_profile(samples, M, band)
    factors = thin_svd(series_to_matrix(phi))
    return FTRModel(thr, factors, profile, s.grid, s.times)


def ftr_reconstruct(m: FTRModel, n) -> SnapshotSeries:
    """``f(phi_n)`` for every snapshot."""
    phin = truncate(m.phi_factors, n).Xn
    return matrix_to_series(eval_profile(m.profile, phin), m.grid, m.times)


def pod_reconstruct(s: SnapshotSeries, n, factors=None) -> SnapshotSeries:
    """Rank-``n`` POD approximation of ``s``; ``factors`` may be precomputed."""
    F = thin_svd(series_to_matrix(s)) if factors is None else factors
    return matrix_to_series(truncate(F, n).Xn, s.grid, s.times)


@dataclass(frozen=True, eq=False)
class ErrorReport:
    """Relative errors per mode count, in Frobenius (``_fro``) and spectral
    (``_spec``) norms.

    ``bound`` is ``delta_f + lipschitz * sigma_next / ||q||``, the first-order
    part of the error estimate; ``sigma_next[k]`` is the spectral truncation
    error of the level-set stack at ``n[k]`` (zero at full rank).
    """

    n: np.ndarray
    pod_rel_fro: np.ndarray
    ftr_rel_fro: np.ndarray
    phi_rel_fro: np.ndarray
    delta_f_fro: np.ndarray
    bound_fro: np.ndarray
    pod_rel_spec: np.ndarray
    ftr_rel_spec: np.ndarray
    phi_rel_spec: np.ndarray
    delta_f_spec: np.ndarray
    bound_spec: np.ndarray
    sigma_next: np.ndarray
    lipschitz: float
    q_norm_fro: float
    q_norm_spec: float
    extras: dict = field(default_factory=dict)

    CSV_COLUMNS = ("n", "pod_rel_fro", "ftr_rel_fro", "phi_rel_fro", "delta_f",
                   "bound", "pod_rel_spec", "ftr_rel_spec")

    def as_table(self) -> dict:
        """Columns for CSV export; ``delta_f`` and ``bound`` are Frobenius."""
        return {
            "n": self.n,
            "pod_rel_fro": self.pod_rel_fro,
            "ftr_rel_fro": self.ftr_rel_fro,
            "phi_rel_fro": self.phi_rel_fro,
            "delta_f": self.delta_f_fro,
            "bound": self.bound_fro,
            "pod_rel_spec": self.pod_rel_spec,
            "ftr_rel_spec": self.ftr_rel_spec,
        }

    def second_order_excess(self, norm="spec") -> np.ndarray:
        """``(ftr_rel - bound) * ||q|| / sigma_next**2`` per row.

        This is the constant the quadratic remainder term would need at
        each mode count; rows with ``sigma_next == 0`` give 0.
        """
        if norm == "spec":
            excess = (self.ftr_rel_spec - self.bound_spec) * self.q_norm_spec
        else:
            excess = (self.ftr_rel_fro - self.bound_fro) * self.q_norm_fro
        s2 = self.sigma_next ** 2
        out = np.zeros_like(excess)
        pos = s2 > 0
        out[pos] = excess[pos] / s2[pos]
        return out


def error_report(s: SnapshotSeries, m: FTRModel, ns=None, q_factors=None) -> ErrorReport:
    """Errors of POD and FTR reconstructions of ``s`` for each mode count in ``ns``."""
    Xq = series_to_matrix(s)
    Fq = thin_svd(Xq) if q_factors is None else q_factors
    Fphi = m.phi_factors
    r = min(Fq.rank, Fphi.rank)
    ns = np.arange(r + 1) if ns is None else np.asarray(ns, dtype=int).ravel()
    if ns.size and (ns.min() < 0 or ns.max() > r):
        raise RankError(f"mode counts must lie in [0, {r}]")

    Xphi = truncate(Fphi, Fphi.rank).Xn
    qf, qs = np.linalg.norm(Xq), spectral_norm(Xq)
    pf, ps = np.linalg.norm(Xphi), spectral_norm(Xphi)
    dfull = Xq - eval_profile(m.profile, Xphi)
    df_f, df_s = np.linalg.norm(dfull) / qf, spectral_norm(dfull) / qs
    lip = float(np.max(np.abs(profile_derivative(m.profile))))

    rows = {k: np.empty(ns.size) for k in (
        "pod_f", "ftr_f", "phi_f", "pod_s", "ftr_s", "phi_s", "sig")}
    for k, n in enumerate(ns):
        pod_res = Xq - truncate(Fq, n).Xn
        phin = truncate(Fphi, n).Xn
        ftr_res = Xq - eval_profile(m.profile, phin)
        phi_res = Xphi - phin
        rows["pod_f"][k] = np.linalg.norm(pod_res) / qf
        rows["ftr_f"][k] = np.linalg.norm(ftr_res) / qf
        rows["phi_f"][k] = np.linalg.norm(phi_res) / pf
        rows["pod_s"][k] = spectral_norm(pod_res) / qs
        rows["ftr_s"][k] = spectral_norm(ftr_res) / qs
        rows["phi_s"][k] = spectral_norm(phi_res) / ps
        rows["sig"][k] = Fphi.S[n] if n < Fphi.rank else 0.0

    nrow = ns.size
    return ErrorReport(
        n=ns,
        pod_rel_fro=rows["pod_f"],
        ftr_rel_fro=rows["ftr_f"],
        phi_rel_fro=rows["phi_f"],
        delta_f_fro=np.full(nrow, df_f),
        bound_fro=df_f + lip * rows["sig"] / qf,
        pod_rel_spec=rows["pod_s"],
        ftr_rel_spec=rows["ftr_s"],
        phi_rel_spec=rows["phi_s"],
        delta_f_spec=np.full(nrow, df_s),
        bound_spec=df_s + lip * rows["sig"] / qs,
        sigma_next=rows["sig"],
        lipschitz=lip,
        q_norm_fro=qf,
        q_norm_spec=qs,
    )
