"""FTRS binary snapshot files and CSV tables.

FTRS layout, all little-endian::

    offset  size        content
    0       4           magic b"FTRS"
    4       4           format version, uint32 (currently 1)
    8       12          nx, ny, nt, uint32 each
    20      16          Lx, Ly, float64 each
    36      8 nt        timestamps, float64
    36+8nt  8 nt nx ny  field values, float64, snapshot-major, x fastest

so a file holds exactly ``36 + 8 nt + 8 nt nx ny`` bytes. A 1D series is
stored with ``ny = 1`` and ``Ly = 0``.
"""

from __future__ import annotations

import csv
import json
import struct
from pathlib import Path

import numpy as np

from .core import Grid1D, Grid2D, SnapshotSeries
from .errors import BadMagic, FormatError, TruncatedPayload, VersionMismatch

MAGIC = b"FTRS"
VERSION = 1
_HEADER = struct.Struct("<4sI3I2d")
HEADER_SIZE = _HEADER.size  # 36


def snapshot_file_size(nx, ny, nt) -> int:
    return HEADER_SIZE + 8 * nt + 8 * nt * nx * ny


def _dims(grid):
    if isinstance(grid, Grid1D):
        return grid.nx, 1, grid.Lx, 0.0
    return grid.nx, grid.ny, grid.Lx, grid.Ly


def encode_snapshots(s: SnapshotSeries) -> bytes:
    nx, ny, Lx, Ly = _dims(s.grid)
    nt = len(s)
    head = _HEADER.pack(MAGIC, VERSION, nx, ny, nt, Lx, Ly)
    return b"".join([
        head,
        np.asarray(s.times, dtype="<f8").tobytes(),
        np.asarray(s.values, dtype="<f8").tobytes(order="C"),
    ])


def decode_snapshots(buf: bytes) -> SnapshotSeries:
    if len(buf) < 4 or buf[:4] != MAGIC:
        raise BadMagic("not an FTRS file (bad magic)")
    if len(buf) < HEADER_SIZE:
        raise TruncatedPayload("FTRS header is truncated")
    _, version, nx, ny, nt, Lx, Ly = _HEADER.unpack_from(buf)
    if version != VERSION:
        raise VersionMismatch(f"FTRS version {version} unsupported (expected {VERSION})")
    expected = snapshot_file_size(nx, ny, nt)
    if len(buf) < expected:
        raise TruncatedPayload(f"FTRS payload truncated: {len(buf)} of {expected} bytes")
    if len(buf) > expected:
        raise FormatError(f"FTRS file has {len(buf) - expected} trailing bytes")
    try:
        grid = Grid1D(nx, Lx) if ny == 1 else Grid2D(nx, ny, Lx, Ly)
    except ValueError as exc:
        raise FormatError(f"invalid FTRS grid: {exc}") from None
    off = HEADER_SIZE
    times = np.frombuffer(buf, dtype="<f8", count=nt, offset=off).astype(np.float64)
    off += 8 * nt
    values = np.frombuffer(buf, dtype="<f8", count=nt * nx * ny, offset=off)
    try:
        return SnapshotSeries(grid, times, values.astype(np.float64).reshape((nt,) + grid.shape))
    except ValueError as exc:
        raise FormatError(f"invalid FTRS content: {exc}") from None


def write_snapshots(s: SnapshotSeries, destination) -> None:
    """Write ``s`` as FTRS to a path or binary file object."""
    data = encode_snapshots(s)
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        Path(destination).write_bytes(data)


def read_snapshots(source) -> SnapshotSeries:
    """Read an FTRS series from a path or binary file object.

    Raises
    ------
    BadMagic, VersionMismatch, TruncatedPayload
        For the corresponding malformations; all derive from ``FormatError``.
    """
    if hasattr(source, "read"):
        buf = source.read()
    else:
        buf = Path(source).read_bytes()
    return decode_snapshots(buf)


def _fmt(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return "%.17g" % float(v)


def write_csv(table, destination) -> None:
    """Write named columns as CSV: header row, ``,`` separators, LF endings.

    ``table`` maps column names to equal-length sequences. Floats are
    written with 17 significant digits so they parse back exactly.
    """
    names = list(table)
    cols = [np.asarray(table[k]).ravel() for k in names]
    if len({c.size for c in cols}) > 1:
        raise ValueError("CSV columns differ in length")
    nrow = cols[0].size if cols else 0

    def emit(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for r in range(nrow):
            w.writerow([_fmt(c[r]) for c in cols])

    if hasattr(destination, "write"):
        emit(destination)
    else:
        with open(destination, "w", newline="", encoding="ascii") as fh:
            emit(fh)


def read_csv(source) -> dict:
    """Parse a CSV written by :func:`write_csv` into numpy columns.

    Columns whose entries are all integers come back as int64, others as
    float64.
    """
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        with open(source, newline="", encoding="ascii") as fh:
            rows = list(csv.reader(fh))
    if not rows:
        raise FormatError("empty CSV")
    names, body = rows[0], rows[1:]
    out = {}
    for k, name in enumerate(names):
        raw = [r[k] for r in body]
        try:
            out[name] = np.array([int(v) for v in raw], dtype=np.int64)
        except ValueError:
            out[name] = np.array([float(v) for v in raw], dtype=np.float64)
    return out


def save_model(model, directory) -> None:
    """Persist an :class:`~frontrom.ftr.FTRModel` into ``directory``.

    Files: ``phi.ftrs`` (level-set stack), ``modes.ftrs`` (spatial modes, one
    per "snapshot"), ``singular_values.csv``, ``coefficients.csv`` (right
    singular vectors, one column per mode), ``profile.csv`` and
    ``model.json``.
    """
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    F = model.phi_factors
    grid = model.grid
    write_snapshots(model.phi_series(), d / "phi.ftrs")
    modes = SnapshotSeries(grid, np.arange(F.rank, dtype=np.float64),
                           F.U.T.reshape((F.rank,) + grid.shape))
    write_snapshots(modes, d / "modes.ftrs")
    write_csv({"k": np.arange(1, F.rank + 1), "sigma": F.S}, d / "singular_values.csv")
    write_csv({f"v{k + 1}": F.V[:, k] for k in range(F.rank)}, d / "coefficients.csv")
    write_csv({"support": model.profile.support, "value": model.profile.values},
              d / "profile.csv")
    meta = {"format": "frontrom-model", "version": 1,
            "threshold": model.threshold, "band": model.profile.band,
            "times": [float(t) for t in model.times]}
    (d / "model.json").write_text(json.dumps(meta, indent=2) + "\n")


def load_model(directory):
    from .ftr import FTRModel
    from .lowrank import SVDFactors
    from .profile import FrontProfile

    d = Path(directory)
    meta = json.loads((d / "model.json").read_text())
    modes = read_snapshots(d / "modes.ftrs")
    S = read_csv(d / "singular_values.csv")["sigma"].astype(np.float64)
    coef = read_csv(d / "coefficients.csv")
    V = np.column_stack([coef[f"v{k + 1}"] for k in range(S.size)]).astype(np.float64)
    U = modes.values.reshape(S.size, -1).T.copy()
    prof = read_csv(d / "profile.csv")
    profile = FrontProfile(prof["support"].astype(np.float64),
                           prof["value"].astype(np.float64), float(meta["band"]))
    return FTRModel(float(meta["threshold"]), SVDFactors(U, S, V), profile,
                    modes.grid, np.asarray(meta["times"], dtype=np.float64))


__all__ = [
    "MAGIC", "VERSION", "HEADER_SIZE", "snapshot_file_size",
    "write_snapshots", "read_snapshots", "write_csv", "read_csv",
    "save_model", "load_model",
]