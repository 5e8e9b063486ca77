import numpy as np
import pytest

from frontrom import io
from frontrom.cli import main, parse_modes


@pytest.fixture
def small_disc_file(tmp_path):
    p = tmp_path / "disc.ftrs"
    assert main(["generate", "disc", "-o", str(p), "--nx", "64", "--nt", "16"]) == 0
    return p


def test_generate_variants(tmp_path):
    for ds in ("advection1d", "disc", "merging"):
        p = tmp_path / f"{ds}.ftrs"
        assert main(["generate", ds, "-o", str(p), "--nx", "32", "--nt", "5"]) == 0
        s = io.read_snapshots(p)
        assert len(s) == 5
    p = tmp_path / "para.ftrs"
    assert main(["generate", "disc", "-o", str(p), "--nx", "32", "--nt", "5",
                 "--field", "phi", "--phi-kind", "paraboloid"]) == 0
    assert io.read_snapshots(p).values.min() < 0


def test_spectrum(small_disc_file, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["spectrum", "-i", str(small_disc_file), "-o", str(out)]) == 0
    t = io.read_csv(out)
    assert list(t) == ["k", "sigma", "sigma_normalized"]
    assert t["sigma_normalized"][0] == 1.0 and np.all(np.diff(t["sigma"]) <= 0)


def test_generate_disc_then_sweep_ftr_beats_pod(tmp_path):
    data = tmp_path / "disc.ftrs"
    out = tmp_path / "report.csv"
    assert main(["generate", "disc", "-o", str(data)]) == 0
    assert main(["sweep", "-i", str(data), "-o", str(out), "--threshold", "0.5",
                 "--modes", "1..10"]) == 0
    t = io.read_csv(out)
    assert list(t) == ["n", "pod_rel_fro", "ftr_rel_fro", "phi_rel_fro", "delta_f",
                       "bound", "pod_rel_spec", "ftr_rel_spec"]
    k = list(t["n"]).index(10)
    assert t["ftr_rel_fro"][k] < t["pod_rel_fro"][k]


def test_reconstruct_pod_zero_modes(small_disc_file, tmp_path):
    out = tmp_path / "r.ftrs"
    assert main(["reconstruct", "-i", str(small_disc_file), "-o", str(out),
                 "--modes", "0", "--method", "pod"]) == 0
    assert not np.any(io.read_snapshots(out).values)


def test_threshold_outside_range(small_disc_file, tmp_path, capsys):
    code = main(["decompose", "-i", str(small_disc_file), "-o", str(tmp_path / "m"),
                 "--threshold", "2.0"])
    assert code == 4
    err = capsys.readouterr().err
    assert "threshold outside data range" in err and err.count("\n") == 1


def test_decompose_then_reconstruct(small_disc_file, tmp_path):
    m = tmp_path / "m"
    assert main(["decompose", "-i", str(small_disc_file), "-o", str(m),
                 "--threshold", "0.5"]) == 0
    a, b = tmp_path / "a.ftrs", tmp_path / "b.ftrs"
    assert main(["reconstruct", "-i", str(small_disc_file), "-o", str(a),
                 "--modes", "6", "--model", str(m)]) == 0
    assert main(["reconstruct", "-i", str(small_disc_file), "-o", str(b),
                 "--modes", "6", "--threshold", "0.5"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_outputs_are_deterministic(small_disc_file, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.csv"
        assert main(["sweep", "-i", str(small_disc_file), "-o", str(out),
                     "--threshold", "0.5", "--modes", "0,3,N"]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("argv, code", [
    (["reconstruct", "--modes", "99", "--method", "pod"], 5),
    (["reconstruct", "--modes", "3", "--method", "ftr", "--threshold", "0.5",
      "--band", "1e-9"], 8),
    (["sweep", "--threshold", "0.5", "--modes", "0..99"], 5),
])
def test_error_exit_codes(small_disc_file, tmp_path, argv, code):
    argv = argv[:1] + ["-i", str(small_disc_file), "-o", str(tmp_path / "x")] + argv[1:]
    assert main(argv) == code


def test_empty_contour_exit_code(tmp_path):
    from frontrom.core import SnapshotSeries, make_grid
    g = make_grid(8, 8, 1, 1)
    X, _ = g.meshgrid()
    p = tmp_path / "s.ftrs"
    io.write_snapshots(SnapshotSeries(g, [0, 1], np.stack([X, np.full_like(X, 0.9)])), p)
    assert main(["decompose", "-i", str(p), "-o", str(tmp_path / "m"),
                 "--threshold", "0.5"]) == 3


def test_format_and_missing_file_exit_codes(tmp_path):
    bad = tmp_path / "bad.ftrs"
    bad.write_bytes(b"nope")
    assert main(["spectrum", "-i", str(bad), "-o", str(tmp_path / "s.csv")]) == 6
    assert main(["spectrum", "-i", str(tmp_path / "none.ftrs"),
                 "-o", str(tmp_path / "s.csv")]) == 7


def test_invalid_flags_rejected_before_work(small_disc_file, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["decompose", "-i", str(small_disc_file), "-o", str(tmp_path / "m"),
              "--threshold", "0.5", "--band", "-1"])
    assert e.value.code == 2
    assert not (tmp_path / "m").exists()


def test_parse_modes():
    assert parse_modes("1..4", 9) == [1, 2, 3, 4]
    assert parse_modes("0,5,N", 9) == [0, 5, 9]
    assert parse_modes("1..N", 3) == [1, 2, 3]
    with pytest.raises(ValueError):
        parse_modes("-1", 3)
