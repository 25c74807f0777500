"""Command line interface: ``fit-check``, ``closed-form`` and ``simulate``.

Every subcommand is a pure function of its arguments and input files; identical
invocations produce identical output bytes.  Warnings are carried inside the
report and never change the exit status; hard errors print to stderr and exit
nonzero.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import warnings
from pathlib import Path

from . import datasets
from .errors import ScorefitError, ValidationError
from .fileio import parse_loadings, parse_matrix
from .fit import (
    ModelKind,
    min_p_for_srmr,
    required_r_curve,
    solve_r_for_srmr,
    srmr,
    srmr_parallel_closed_form,
)
from .model import FactorModel, factor_implied_sigma
from .report import OutputFormat, ReportDocument
from .scoring import ScoreWeights, fs_implied_sigma, score_model_implied_sigma
from .simulation import LoadingPattern, SimulationConfig, run_simulation


def _captured(fn, *args, **kwargs):
    """Run fn, returning (result, tuple of warning messages it emitted)."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = fn(*args, **kwargs)
    return result, tuple(str(w.message) for w in caught)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _p_range(text: str) -> range:
    """Inclusive integer range 'start:stop[:step]'."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected start:stop[:step], got {text!r}")
    try:
        start, stop = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if step < 1 or stop < start:
        raise argparse.ArgumentTypeError(f"empty or descending range {text!r}")
    return range(start, stop + 1, step)


def _add_output_flags(sub: argparse.ArgumentParser, default_format: str) -> None:
    sub.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=default_format,
        help=f"output format (default: {default_format})",
    )
    sub.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scorefit",
        description=(
            "Fit diagnostics for the covariance models implied by factor score "
            "estimates and unit-weighted scales (SRMR), plus the parallel-"
            "measurement closed form and a Monte Carlo study of sample SRMR."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser(
        "fit-check",
        help="SRMR of the unit-weighted (and optionally factor-score / reflective) model",
    )
    src = fit.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="PATH", help="correlation/covariance matrix file")
    src.add_argument("--demo", choices=["stai"], help="use the bundled example dataset")
    fit.add_argument("--loadings", metavar="PATH", help="standardized loadings file (one per line)")
    fit.add_argument(
        "--reflective",
        action="store_true",
        help="also report the reflective one-factor model (needs loadings)",
    )
    fit.add_argument("--residuals", action="store_true", help="include residual matrices")
    _add_output_flags(fit, "table")
    fit.set_defaults(handler=_cmd_fit_check)

    closed = sub.add_parser(
        "closed-form",
        help="parallel-measurement SRMR: evaluate, invert for r, minimal p, or curve table",
    )
    mode = closed.add_mutually_exclusive_group()
    mode.add_argument("--solve-r", type=float, metavar="TARGET", help="find r reaching TARGET at --p")
    mode.add_argument("--min-p", type=float, metavar="TARGET", help="find smallest p reaching TARGET at --r")
    mode.add_argument(
        "--curve",
        type=_float_list,
        metavar="L1,L2,...",
        help="required r for each SRMR level over --p-range",
    )
    closed.add_argument("--r", type=float, help="inter-correlation in [0, 1]")
    closed.add_argument("--p", type=int, help="number of indicators (>= 2)")
    closed.add_argument(
        "--p-range", type=_p_range, metavar="A:B[:S]", help="inclusive p range for --curve"
    )
    _add_output_flags(closed, "table")
    closed.set_defaults(handler=_cmd_closed_form)

    sim = sub.add_parser("simulate", help="Monte Carlo study of the unit-weighted-scale SRMR")
    sim.add_argument("--n", type=_int_list, default=(150, 300, 900), metavar="N1,N2,...")
    sim.add_argument("--l", type=_float_list, default=(0.2, 0.4, 0.6, 0.8), metavar="L1,L2,...")
    sim.add_argument("--p", type=_int_list, default=(6, 12, 24), metavar="P1,P2,...")
    sim.add_argument(
        "--pattern",
        choices=["constant", "variable", "both"],
        default="both",
        help="loading pattern(s) to simulate (default: both)",
    )
    sim.add_argument("--reps", type=int, default=1000, help="replications per cell (default: 1000)")
    sim.add_argument("--seed", type=int, default=1234, help="master seed (default: 1234)")
    sim.add_argument(
        "--workers",
        type=int,
        default=1,
        help="worker threads; affects speed only, never the results",
    )
    _add_output_flags(sim, "csv")
    sim.set_defaults(handler=_cmd_simulate)

    return parser


def _cmd_fit_check(args) -> ReportDocument:
    inputs = []
    if args.demo:
        (sigma, parse_warnings) = _captured(datasets.stai_correlation_matrix)
        checksums = datasets.stai_checksums()
        inputs.append(("matrix", f"demo:{args.demo}"))
        inputs.append(("matrix_sha256", checksums["matrix"]))
        loadings = datasets.stai_loadings() if args.loadings is None else None
        if loadings is not None:
            inputs_loadings_sha = checksums["loadings"]
    else:
        path = Path(args.matrix)
        (sigma, parse_warnings) = _captured(parse_matrix, path)
        inputs.append(("matrix", str(path)))
        inputs.append(("matrix_sha256", _sha256(path)))
        loadings = None
    inputs.append(("p", str(sigma.p)))

    if args.loadings is not None:
        loadings_path = Path(args.loadings)
        loadings = parse_loadings(loadings_path, expected_p=sigma.p)
        inputs.append(("loadings", str(loadings_path)))
        inputs.append(("loadings_sha256", _sha256(loadings_path)))
    elif loadings is not None:
        inputs.append(("loadings", f"demo:{args.demo}"))
        inputs.append(("loadings_sha256", inputs_loadings_sha))

    if args.reflective and loadings is None:
        raise ValidationError("--reflective requires loadings")

    fits = []
    implied, caught = _captured(score_model_implied_sigma, sigma, ScoreWeights.unit(sigma.p))
    fits.append(
        (
            "unit_weighted",
            srmr(sigma, implied, ModelKind.UNIT_WEIGHTED, parse_warnings + caught),
        )
    )
    if loadings is not None:
        model = FactorModel.from_standardized_loadings(loadings)
        implied, caught = _captured(fs_implied_sigma, sigma, model)
        fits.append(
            (
                "factor_score",
                srmr(sigma, implied, ModelKind.FACTOR_SCORE, parse_warnings + caught),
            )
        )
        if args.reflective:
            implied, caught = _captured(factor_implied_sigma, model)
            fits.append(
                (
                    "reflective",
                    srmr(sigma, implied, ModelKind.REFLECTIVE_FACTOR, parse_warnings + caught),
                )
            )

    return ReportDocument(
        inputs=tuple(inputs),
        fits=tuple(fits),
        include_residuals=args.residuals,
        fmt=OutputFormat(args.format),
    )


def _cmd_closed_form(args) -> ReportDocument:
    if args.curve is not None:
        if args.p_range is None:
            raise ValidationError("--curve requires --p-range")
        points = required_r_curve(args.curve, args.p_range)
        inputs = (
            ("levels", ",".join(repr(v) for v in sorted(args.curve))),
            ("p_range", f"{args.p_range.start}:{args.p_range.stop - 1}:{args.p_range.step}"),
        )
        return ReportDocument(inputs=inputs, curve=tuple(points), fmt=OutputFormat(args.format))

    if args.solve_r is not None:
        if args.p is None:
            raise ValidationError("--solve-r requires --p")
        value = solve_r_for_srmr(args.solve_r, args.p)
        inputs = (("target_srmr", repr(args.solve_r)), ("p", str(args.p)))
        return ReportDocument(
            inputs=inputs, values=(("required_r", value),), fmt=OutputFormat(args.format)
        )

    if args.min_p is not None:
        if args.r is None:
            raise ValidationError("--min-p requires --r")
        value = min_p_for_srmr(args.min_p, args.r)
        inputs = (("target_srmr", repr(args.min_p)), ("r", repr(args.r)))
        return ReportDocument(
            inputs=inputs, values=(("min_p", value),), fmt=OutputFormat(args.format)
        )

    if args.r is None or args.p is None:
        raise ValidationError("closed-form needs --r and --p (or one of --solve-r/--min-p/--curve)")
    value = srmr_parallel_closed_form(args.r, args.p)
    inputs = (("r", repr(args.r)), ("p", str(args.p)))
    return ReportDocument(
        inputs=inputs, values=(("srmr", value),), fmt=OutputFormat(args.format)
    )


def _cmd_simulate(args) -> ReportDocument:
    patterns = {
        "constant": (LoadingPattern.CONSTANT,),
        "variable": (LoadingPattern.VARIABLE,),
        "both": (LoadingPattern.CONSTANT, LoadingPattern.VARIABLE),
    }[args.pattern]
    tables = []
    for pattern in patterns:
        config = SimulationConfig(
            sample_sizes=args.n,
            mean_loadings=args.l,
            indicator_counts=args.p,
            loading_pattern=pattern,
            replications=args.reps,
            seed=args.seed,
        )
        tables.append(run_simulation(config, workers=args.workers))
    if len(tables) == 2:
        # Interleave so each (n, l, p) design row shows both patterns adjacently.
        cells = [cell for pair in zip(*tables) for cell in pair]
    else:
        cells = tables[0]
    inputs = (
        ("n", ",".join(str(n) for n in args.n)),
        ("l", ",".join(repr(l) for l in args.l)),
        ("p", ",".join(str(p) for p in args.p)),
        ("pattern", args.pattern),
        ("replications", str(args.reps)),
        ("seed", str(args.seed)),
    )
    return ReportDocument(inputs=inputs, cells=tuple(cells), fmt=OutputFormat(args.format))


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        document = args.handler(args)
        text = document.render()
    except ScorefitError as exc:
        print(f"scorefit: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
