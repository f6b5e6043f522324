"""``relres`` command line.

Exit codes: 0 success, 2 configuration error, 3 numeric failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from relres.cli.config import PRESETS, SCENARIOS, parse_config, preset
from relres.cli.svg import render_svg
from relres.cli.sweep import format_csv, format_trajectories, run_dynamics, run_sweep
from relres.errors import DomainError, EmptyData, NoRoot, NotConverged, ParseError, ValidationError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def _defaults_help():
    lines = ["scenario parameters and their defaults:"]
    for name, table in SCENARIOS.items():
        pairs = ", ".join(f"{k}={v.default:.6g}" if v.numeric else f"{k}={v.default}" for k, v in table.items())
        lines.append(f"  {name}: {pairs}")
    lines.append("axis defaults: points=200, scale=linear; output default: csv=sweep.csv")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root seed for random initial states and oracle restarts")
    common.add_argument("--oracle-discord", type=int, default=0, metavar="N",
                        help="take D_T from the minimizing oracle with N restarts (slow; default off)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for the grid (default 1)")

    p = argparse.ArgumentParser(
        prog="relres",
        description="Parameter sweeps of coherence, discord and entanglement; CSV tables and SVG charts.",
        epilog=_defaults_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run a sweep configuration file")
    r.add_argument("config")
    r.add_argument("--out", default=None, help="directory for relative output paths (default: config's directory)")

    pr = sub.add_parser("preset", parents=[common], help="run a built-in figure preset")
    pr.add_argument("name", choices=sorted(PRESETS))
    pr.add_argument("--out", default=".", help="output directory (default: current)")

    d = sub.add_parser("dynamics", parents=[common], help="evolve detector pairs to equilibrium")
    d.add_argument("config")
    d.add_argument("--out", default=None, help="directory for relative output paths (default: config's directory)")
    return p


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _resolve(base, path):
    return path if os.path.isabs(path) else os.path.join(base, path)


def _emit(spec, rows, base, trajectories=None):
    os.makedirs(base, exist_ok=True)
    csv_path = _resolve(base, spec.output.csv)
    _write(csv_path, format_csv(rows, spec))
    written = [csv_path]
    if spec.output.svg:
        svg_path = _resolve(base, spec.output.svg)
        _write(svg_path, render_svg(rows, spec))
        written.append(svg_path)
    if trajectories is not None and spec.output.trajectory:
        tpath = _resolve(base, spec.output.trajectory)
        _write(tpath, format_trajectories(rows, trajectories, spec))
        written.append(tpath)
    return written


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _execute(args):
    opts = dict(oracle_restarts=args.oracle_discord, seed=args.seed, threads=args.threads)
    if args.oracle_discord < 0 or args.threads < 1:
        raise ValidationError("flags", "--oracle-discord must be >= 0 and --threads >= 1")
    if args.command == "preset":
        written = []
        for spec in preset(args.name):
            written += _emit(spec, run_sweep(spec, **opts), args.out)
        return written
    spec = _load(args.config)
    base = args.out if args.out is not None else os.path.dirname(os.path.abspath(args.config))
    if args.command == "dynamics":
        if spec.scenario != "dynamics":
            raise ValidationError("scenario", f"the dynamics command needs scenario = dynamics, got {spec.scenario!r}")
        rows, traj = run_dynamics(spec, **opts)
        return _emit(spec, rows, base, traj)
    return _emit(spec, run_sweep(spec, **opts), base)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        written = _execute(args)
    except (ParseError, ValidationError) as e:
        print(f"relres: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotConverged, NoRoot, DomainError, EmptyData) as e:
        print(f"relres: numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as e:
        print(f"relres: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
