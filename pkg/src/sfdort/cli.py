"""Command line entry point: ``sfdort {simulate,image,run,sweep,plots}``.

Exit status: 0 ok, 2 configuration / input error, 3 numerical failure,
4 I/O error. ``SFDORT_OUTPUT_DIR`` overrides the manifest's output directory.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import io as sfio
from .config import ConfigError, RunConfig, parse_config
from .experiment import emit_plots, image_spectrum, run_single, run_sweep, simulate, write_outputs
from .subspace import SvdConvergenceError

OUTPUT_ENV = "SFDORT_OUTPUT_DIR"

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def load_config(args) -> RunConfig:
    text = Path(args.config).read_text() if args.config else ""
    overrides = list(args.set or [])
    if getattr(args, "radii", None):
        overrides.append(f"sweep.radii={args.radii}")
    if os.environ.get(OUTPUT_ENV):
        overrides.append(f"output.directory={os.environ[OUTPUT_ENV]}")
    if getattr(args, "out", None):
        overrides.append(f"output.directory={args.out}")
    return parse_config(text, overrides)


def cmd_simulate(args):
    cfg = load_config(args)
    sv = simulate(cfg)
    out = Path(cfg.output_dir) / "spectrum.csv"
    sfio.atomic_write(out, sfio.spectrum_to_csv(sv))
    print(out)


def cmd_image(args):
    cfg = load_config(args)
    sv = sfio.spectrum_from_csv(Path(args.spectrum).read_text(), cfg.grid)
    images, reports = image_spectrum(sv, cfg)
    write_outputs(cfg.output_dir, None, images, reports)
    _print_reports(reports)


def cmd_run(args):
    cfg = load_config(args)
    _print_reports(run_single(cfg))


def cmd_sweep(args):
    cfg = load_config(args)
    if not cfg.radii:
        raise ConfigError("sweep needs a non-empty radii list")
    _print_reports(run_sweep(cfg, jobs=args.jobs))


def cmd_plots(args):
    rows = sfio.read_results(args.table)
    out = args.out or str(Path(args.table).parent)
    for p in emit_plots(rows, out):
        print(p)


def _print_reports(reports):
    for r in reports:
        print(f"{r.method:5s} r={r.radius_mm:g}mm  est=({r.estimated_position[0]:g}, {r.estimated_position[1]:g})"
              f"  e={r.error_mm:.3f}mm  h4={r.sharpness_h4:.4e}  t={r.runtime_s:.2f}s")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sfdort", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-c", "--config", help="INI manifest (reference setup when omitted)")
        p.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE", help="override a manifest entry")
        p.add_argument("-o", "--out", help="output directory")
        return p

    common(sub.add_parser("simulate", help="synthesize the received spectrum")).set_defaults(func=cmd_simulate)
    p = common(sub.add_parser("image", help="form images from a spectrum CSV"))
    p.add_argument("spectrum", help="spectrum CSV written by 'simulate'")
    p.set_defaults(func=cmd_image)
    common(sub.add_parser("run", help="simulate, image and evaluate")).set_defaults(func=cmd_run)
    p = common(sub.add_parser("sweep", help="run over a list of target radii"))
    p.add_argument("--radii", help="comma-separated radii in mm")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("plots", help="turn a results table into per-figure CSV files")
    p.add_argument("table", help="results CSV (e.g. sweep_results.csv)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_plots)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except SvdConvergenceError as exc:
        print(f"error [{type(exc).__module__}] {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, IndexError) as exc:
        print(f"error [{type(exc).__module__}] {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error [io] {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
