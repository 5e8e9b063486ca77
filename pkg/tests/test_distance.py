import numpy as np
import pytest

from frontrom.contour import extract_zero_level
from frontrom.core import Grid1D, SnapshotSeries, make_grid
from frontrom.distance import (point_segment_distance, sdf_series,
                               signed_distance_field, unsigned_distance_brute,
                               unsigned_distance_tree)
from frontrom.errors import EmptyContour
from frontrom.profile import tanh_profile


def test_point_on_segment():
    assert point_segment_distance((0.3, 0.0), (0, 0), (1, 0)) == 0.0


def test_endpoint_case():
    assert point_segment_distance((2, 0), (0, 0), (1, 0)) == 1.0


def test_perpendicular_case():
    assert point_segment_distance((0.5, 0.3), (0, 0), (1, 0)) == pytest.approx(0.3, abs=1e-15)


def test_degenerate_segment_rejected():
    with pytest.raises(ValueError):
        point_segment_distance((1, 1), (0, 0), (0, 0))


def test_disc_sdf_matches_analytic(disc, disc_sdf):
    q, phi = disc
    g = q.grid
    err = np.abs(disc_sdf.values - phi.values)[np.abs(phi.values) < 0.3]
    assert err.max() <= 2 * g.h


def test_sign_rule(disc, disc_sdf):
    q = disc[0].values
    assert np.all(disc_sdf.values[q < 0.5] < 0)
    assert np.all(disc_sdf.values[q >= 0.5] >= 0)


def test_exact_threshold_node_gets_plus_zero():
    g = make_grid(5, 5, 1, 1)
    X, Y = g.meshgrid()
    f = np.hypot(X - 0.5, Y - 0.5)
    L = signed_distance_field(f, g, 0.25)
    # nodes (1,2), (3,2), (2,1), (2,3) lie exactly at radius 0.25
    assert L.values[2, 1] == 0.0 and not np.signbit(L.values[2, 1])


def test_constant_field_raises():
    g = make_grid(4, 4, 1, 1)
    with pytest.raises(EmptyContour):
        signed_distance_field(np.ones((4, 4)), g, 0.5)


def test_lipschitz_between_neighbours(disc, disc_sdf):
    g = disc[0].grid
    v = disc_sdf.values
    slack = 2 * g.h
    assert np.all(np.abs(np.diff(v, axis=2)) <= g.hx + slack)
    assert np.all(np.abs(np.diff(v, axis=1)) <= g.hy + slack)


def test_tree_matches_brute(rng):
    g = make_grid(97, 83, 1.3, 0.9)
    X, Y = g.meshgrid()
    f = np.sin(7 * X) * np.cos(5 * Y) + 0.1 * rng.normal(size=X.shape)
    segs = extract_zero_level(f, g, 0.05).segments
    pts = np.column_stack([X.ravel(), Y.ravel()])
    extra = rng.uniform(-0.5, 2.0, size=(500, 2))
    pts = np.vstack([pts, extra])
    assert np.max(np.abs(unsigned_distance_brute(pts, segs)
                         - unsigned_distance_tree(pts, segs))) <= 1e-12


def test_methods_agree_on_field():
    g = make_grid(64, 64, 1, 1)
    X, Y = g.meshgrid()
    q = tanh_profile(0.02)(np.hypot(X - 0.4, Y - 0.6) - 0.2)
    a = signed_distance_field(q, g, 0.5, method="brute").values
    b = signed_distance_field(q, g, 0.5, method="tree").values
    assert np.max(np.abs(a - b)) <= 1e-12


def test_single_snapshot_series_matches_field():
    g = make_grid(40, 40, 1, 1)
    X, Y = g.meshgrid()
    q = tanh_profile(0.03)(np.hypot(X - 0.5, Y - 0.5) - 0.2)
    s = SnapshotSeries(g, [0.0], q[None])
    assert np.array_equal(sdf_series(s, 0.5).values[0],
                          signed_distance_field(q, g, 0.5).values)


def test_series_reports_offending_index():
    g = make_grid(10, 10, 1, 1)
    X, Y = g.meshgrid()
    q = np.stack([X, np.zeros_like(X), X])
    with pytest.raises(EmptyContour) as info:
        sdf_series(SnapshotSeries(g, [0, 1, 2], q), 0.5)
    assert info.value.index == 1


def test_threads_do_not_change_results(monkeypatch):
    g = make_grid(32, 32, 1, 1)
    X, Y = g.meshgrid()
    q = np.stack([tanh_profile(0.05)(np.hypot(X - c, Y - 0.5) - 0.2) for c in (0.4, 0.5, 0.6)])
    s = SnapshotSeries(g, [0, 1, 2], q)
    a = sdf_series(s, 0.5, n_jobs=1).values
    b = sdf_series(s, 0.5, n_jobs=3).values
    monkeypatch.setenv("FTR_THREADS", "2")
    c = sdf_series(s, 0.5).values
    assert np.array_equal(a, b) and np.array_equal(a, c)


def test_moving_disc_zero_level_tracks_centre(disc, disc_sdf):
    from frontrom.synth import DiscTrajectory
    g = disc[0].grid
    cx, cy = DiscTrajectory().center(disc[0].times)
    for k in range(len(disc_sdf)):
        segs = extract_zero_level(disc_sdf.values[k], g, 0.0)
        w = segs.lengths
        m = (segs.segments.mean(axis=1) * w[:, None]).sum(axis=0) / w.sum()
        assert np.hypot(m[0] - cx[k], m[1] - cy[k]) <= 2 * g.h


def test_merging_series_sign_matches_threshold(merging):
    q = merging[0]
    phi = sdf_series(q, 0.5)
    assert np.array_equal(phi.values >= 0, q.values >= 0.5)


def test_sdf_1d():
    g = Grid1D(101, 1.0)
    q = tanh_profile(0.02)(g.x - 0.43)
    L = signed_distance_field(q, g, 0.5)
    assert np.max(np.abs(L.values - (g.x - 0.43))) < 1e-6
