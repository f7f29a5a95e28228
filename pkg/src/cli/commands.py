"""
Command line interface of the Fourier learner.

Subcommands
-----------
synth      Sample the benchmark function with seeded noise and write `x,y` CSV.
fit        Fit a dataset CSV; write predictions CSV, trace JSON and,
           optionally, model snapshots.
calibrate  Sweep the passband step `delta_bins` and write the report as JSON.

Default output paths live under `$FOURIER_DATA_DIR` (default `data`), which
may also be set in a `.env` file. Explicit flags always win.

Exit codes: 0 success, 2 usage or configuration error, 3 unreadable input,
4 numerical failure.
"""

# ----------------------------------------------------------------------
# Imports
# ----------------------------------------------------------------------

from pathlib import Path
from typing import Callable, Dict, Optional, Sequence
import argparse
import logging
import os
import sys

from dotenv import load_dotenv

from ..domain.errors import (
    ConfigError,
    DatasetError,
    MetricError,
    ParseError,
    SpectralError,
)
from ..domain.fit_config import CALIBRATED_DELTA_BINS, FitConfig, validate_config
from ..domain.types import FitResult, SampleRole
from ..synth.generate_benchmark_data import SynthSpec, generate
from ..trainer.calibrate import DEFAULT_CANDIDATES, calibrate_delta_bins
from ..trainer.fourier_trainer import fit
from .dataset_io import (
    read_dataset_csv,
    write_dataset_csv,
    write_json,
    write_predictions_csv,
    write_snapshots_csv,
    write_trace_json,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def _data_dir() -> Path:
    """Folder for default outputs (`FOURIER_DATA_DIR`, default `data`)."""
    return Path(os.getenv("FOURIER_DATA_DIR", "data"))


def _fmt_r2(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.6f}"


def _config_from_args(args: argparse.Namespace, **extra) -> FitConfig:
    """Build a FitConfig from the shared flags; `--calibrated` only fills an unset step."""
    delta = args.delta_bins
    if delta is None:
        delta = CALIBRATED_DELTA_BINS if args.calibrated else 1
    return FitConfig(
        train_frac=args.train_frac,
        val_frac=args.val_frac,
        test_frac=args.test_frac,
        m=args.m,
        sigma_min=args.sigma_min,
        max_iter=args.max_iter,
        h0=args.h0,
        delta_bins=delta,
        seed=args.seed,
        grid_size=args.grid_size,
        **extra,
    )


def _print_fit_summary(result: FitResult) -> None:
    last = result.final_record
    print(f"termination: {result.termination.value}")
    print(f"final iteration: {last.n} (h_bins={last.h_bins})")
    for role, value in (
        (SampleRole.TRAIN, last.r2_train),
        (SampleRole.VALIDATION, last.r2_val),
        (SampleRole.TEST, last.r2_test),
    ):
        print(f"R² {role.value}: {_fmt_r2(value)}")


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        n_points=args.n,
        x_min=args.x_min,
        x_max=args.x_max,
        noise_mean=args.noise_mean,
        noise_std=args.noise_std,
        seed=args.seed,
    )
    dataset = generate(spec, verbose=args.verbose)
    path = write_dataset_csv(dataset, args.out)
    print(f"wrote {len(dataset)} samples to {path}")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    config = validate_config(_config_from_args(args, snapshot_every=args.snapshot_every))
    dataset = read_dataset_csv(args.input, verbose=args.verbose)
    result = fit(dataset, config, verbose=args.verbose)

    pred_path = write_predictions_csv(result, args.out_pred)
    trace_path = write_trace_json(result, args.out_trace)
    print(f"predictions: {pred_path}")
    print(f"trace: {trace_path}")
    if config.snapshot_every:
        print(f"snapshots: {write_snapshots_csv(result, args.out_snapshots)}")

    _print_fit_summary(result)
    return EXIT_OK


def cmd_calibrate(args: argparse.Namespace) -> int:
    config = validate_config(_config_from_args(args))
    if args.input is not None:
        dataset = read_dataset_csv(args.input, verbose=args.verbose)
    else:
        dataset = generate(SynthSpec(seed=args.seed), verbose=args.verbose)

    report = calibrate_delta_bins(
        dataset,
        config,
        candidates=args.candidates,
        target_r2=args.target_r2,
        verbose=args.verbose,
    )
    print(report.to_frame().to_string(index=False))
    print(f"selected delta_bins: {report.selected if report.selected is not None else 'none'}")
    print(f"report: {write_json(report.to_dict(), args.out)}")
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _fit_flags() -> argparse.ArgumentParser:
    """Flags shared by `fit` and `calibrate`."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--train-frac", type=float, default=0.7)
    parent.add_argument("--val-frac", type=float, default=0.15)
    parent.add_argument("--test-frac", type=float, default=0.15)
    parent.add_argument("--m", type=int, default=5, help="iterations per bandwidth block")
    parent.add_argument("--sigma-min", type=float, default=1e-4, help="convergence threshold")
    parent.add_argument("--max-iter", type=int, default=100)
    parent.add_argument("--h0", type=int, default=0, help="initial passband half-width (bins)")
    parent.add_argument(
        "--delta-bins", type=int, default=None,
        help=f"passband step per block (default 1, or {CALIBRATED_DELTA_BINS} with --calibrated)",
    )
    parent.add_argument("--calibrated", action="store_true", help="use the calibrated passband step")
    parent.add_argument("--grid-size", type=int, default=None, help="power-of-two grid length")
    parent.add_argument("--seed", type=int, default=0)
    parent.add_argument("--verbose", action="store_true")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser; default paths follow `FOURIER_DATA_DIR`."""
    data_dir = _data_dir()

    parser = argparse.ArgumentParser(
        prog="fourier-learner",
        description="Iterative Fourier-filtering regression.",
    )
    parser.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    # synth
    p = sub.add_parser("synth", help="sample the benchmark function")
    p.add_argument("--n", type=int, default=512)
    p.add_argument("--x-min", type=float, default=-25.0)
    p.add_argument("--x-max", type=float, default=25.0)
    p.add_argument("--noise-mean", type=float, default=0.0)
    p.add_argument("--noise-std", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=data_dir / "synth" / "benchmark.csv")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(handler=cmd_synth)

    # fit
    p = sub.add_parser("fit", parents=[_fit_flags()], help="fit a dataset CSV")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--snapshot-every", type=int, default=0)
    p.add_argument("--out-pred", type=Path, default=data_dir / "fit" / "predictions.csv")
    p.add_argument("--out-trace", type=Path, default=data_dir / "fit" / "trace.json")
    p.add_argument("--out-snapshots", type=Path, default=data_dir / "fit" / "snapshots.csv")
    p.set_defaults(handler=cmd_fit)

    # calibrate
    p = sub.add_parser("calibrate", parents=[_fit_flags()], help="sweep the passband step")
    p.add_argument("--input", type=Path, default=None, help="dataset CSV (default: the benchmark)")
    p.add_argument("--candidates", type=int, nargs="+", default=list(DEFAULT_CANDIDATES))
    p.add_argument("--target-r2", type=float, default=0.90)
    p.add_argument("--out", type=Path, default=data_dir / "calibrate" / "calibration.json")
    p.set_defaults(handler=cmd_calibrate)

    return parser


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------

# Checked in order; subclasses before their bases.
_EXIT_CODES: Dict[type, int] = {
    ParseError: EXIT_PARSE,
    FileNotFoundError: EXIT_PARSE,
    SpectralError: EXIT_NUMERIC,
    MetricError: EXIT_NUMERIC,
    ConfigError: EXIT_USAGE,
    DatasetError: EXIT_USAGE,
    OSError: EXIT_USAGE,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Parameters
    ----------
    argv : sequence of str or None, optional
        Arguments without the program name (default: `sys.argv[1:]`).

    Returns
    -------
    int
        Process exit code.
    """

    load_dotenv()

    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except tuple(_EXIT_CODES) as e:
        code = next(c for kind, c in _EXIT_CODES.items() if isinstance(e, kind))
        log.debug("command %s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return code
