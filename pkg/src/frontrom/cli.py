"""Command line interface.

Exit codes: 0 success, 1 other package error, 2 usage error, 3 empty contour,
4 threshold outside data range, 5 mode count out of range, 6 malformed
input file, 7 file system error, 8 invalid parameter value.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import io, synth
from .core import series_to_matrix
from .errors import FTRError
from .ftr import error_report, ftr_decompose, ftr_reconstruct, pod_reconstruct
from .lowrank import thin_svd
from .profile import DEFAULT_SUPPORT_SIZE, default_band

EXIT_OS = 7
EXIT_VALUE = 8


def _positive(kind):
    def parse(text):
        v = kind(text)
        if not (v > 0 and math.isfinite(v)):
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v
    return parse


def _finite(text):
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return v


def _count(minimum):
    def parse(text):
        v = int(text)
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {text}")
        return v
    return parse


def parse_modes(text, rank):
    """Mode list from ``"n"``, ``"a,b,c"`` or ``"a..b"``; ``N`` means full rank."""
    def one(tok):
        tok = tok.strip()
        v = rank if tok.upper() == "N" else int(tok)
        if v < 0:
            raise ValueError(f"negative mode count {tok}")
        return v

    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(one(a), one(b) + 1))
    return [one(t) for t in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="frontrom",
        description="Front transport reduction of snapshot data with sharp fronts.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic FTRS dataset")
    g.add_argument("dataset", choices=["advection1d", "disc", "merging"])
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--nx", type=_count(2))
    g.add_argument("--nt", type=_count(2))
    g.add_argument("--lambda", dest="lam", type=_positive(float))
    g.add_argument("--L", dest="L", type=_positive(float), default=1.0)
    g.add_argument("--speed", type=_positive(float), default=0.5,
                   help="advection speed (advection1d)")
    g.add_argument("--T", dest="T", type=_positive(float), default=1.0,
                   help="final time (advection1d)")
    g.add_argument("--field", choices=["q", "phi"], default="q",
                   help="write the data q or the analytic level set")
    g.add_argument("--phi-kind", choices=list(synth.PHI_KINDS),
                   default="signed_distance", help="level-set encoding (disc)")
    g.add_argument("--seed", type=int, help="reserved; generators are deterministic")

    s = sub.add_parser("spectrum", help="singular values of the snapshot matrix")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", required=True)

    def model_flags(sp):
        sp.add_argument("--threshold", type=_finite)
        sp.add_argument("--band", type=_positive(float),
                        help="sampling band half-width (default 5 grid spacings)")
        sp.add_argument("--support-size", type=_count(2), default=DEFAULT_SUPPORT_SIZE)
        sp.add_argument("--distance", choices=["tree", "brute"], default="tree")

    d = sub.add_parser("decompose", help="fit and store an FTR model")
    d.add_argument("-i", "--input", required=True)
    d.add_argument("-o", "--output", required=True, help="model directory")
    model_flags(d)

    r = sub.add_parser("reconstruct", help="rank-n POD or FTR reconstruction")
    r.add_argument("-i", "--input", required=True)
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--modes", type=_count(0), required=True)
    r.add_argument("--method", choices=["pod", "ftr"], default="ftr")
    r.add_argument("--model", help="model directory from `decompose` (ftr only)")
    model_flags(r)

    w = sub.add_parser("sweep", help="error report over mode counts (CSV)")
    w.add_argument("-i", "--input", required=True)
    w.add_argument("-o", "--output", required=True)
    w.add_argument("--modes", default="0..N", help='e.g. "1..N", "1..20" or "1,5,10"')
    w.add_argument("--norm", choices=["fro", "spectral", "both"], default="fro",
                   help="norm of the summary printed to stdout")
    model_flags(w)
    return p


def _need_threshold(args):
    if args.threshold is None:
        raise ValueError("--threshold is required")
    return args.threshold


def _decompose(args, q):
    return ftr_decompose(q, _need_threshold(args), band=args.band,
                         M=args.support_size, method=args.distance)


def cmd_generate(args):
    kw = {}
    if args.nx is not None:
        kw["nx"] = args.nx
    if args.nt is not None:
        kw["nt"] = args.nt
    if args.lam is not None:
        kw["lam"] = args.lam
    if args.dataset == "advection1d":
        q, phi = synth.gen_advection_1d(L=args.L, T=args.T, c=args.speed, **kw)
    elif args.dataset == "disc":
        q, phi = synth.gen_moving_disc(synth.DiscTrajectory(args.L),
                                       phi_kind=args.phi_kind, **kw)
    else:
        q, phi = synth.gen_merging_discs(L=args.L, return_phi=True, **kw)
    io.write_snapshots(q if args.field == "q" else phi, args.output)


def cmd_spectrum(args):
    q = io.read_snapshots(args.input)
    F = thin_svd(series_to_matrix(q))
    norm = F.S / F.S[0] if F.S[0] > 0 else np.zeros_like(F.S)
    io.write_csv({"k": np.arange(1, F.rank + 1), "sigma": F.S,
                  "sigma_normalized": norm}, args.output)


def cmd_decompose(args):
    q = io.read_snapshots(args.input)
    io.save_model(_decompose(args, q), args.output)


def cmd_reconstruct(args):
    q = io.read_snapshots(args.input)
    if args.method == "pod":
        out = pod_reconstruct(q, args.modes)
    else:
        model = io.load_model(args.model) if args.model else _decompose(args, q)
        out = ftr_reconstruct(model, args.modes)
    io.write_snapshots(out, args.output)


def cmd_sweep(args):
    q = io.read_snapshots(args.input)
    model = _decompose(args, q)
    ns = parse_modes(args.modes, min(model.rank, len(q), q.grid.size))
    rep = error_report(q, model, ns)
    io.write_csv(rep.as_table(), args.output)
    band = model.profile.band
    print(f"band={band:.6g} (default {default_band(q.grid):.6g}), "
          f"delta_f={rep.delta_f_fro[0]:.6g}")
    for k, n in enumerate(rep.n):
        parts = []
        if args.norm in ("fro", "both"):
            parts.append(f"pod_fro={rep.pod_rel_fro[k]:.6g} ftr_fro={rep.ftr_rel_fro[k]:.6g}")
        if args.norm in ("spectral", "both"):
            parts.append(f"pod_spec={rep.pod_rel_spec[k]:.6g} ftr_spec={rep.ftr_rel_spec[k]:.6g}")
        print(f"n={n} " + " ".join(parts))


COMMANDS = {
    "generate": cmd_generate,
    "spectrum": cmd_spectrum,
    "decompose": cmd_decompose,
    "reconstruct": cmd_reconstruct,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except FTRError as exc:
        print(f"frontrom {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"frontrom {args.command}: {exc}", file=sys.stderr)
        return EXIT_OS
    except ValueError as exc:
        print(f"frontrom {args.command}: {exc}", file=sys.stderr)
        return EXIT_VALUE
    return 0


if __name__ == "__main__":
    sys.exit(main())
