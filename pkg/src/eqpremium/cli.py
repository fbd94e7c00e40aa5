"""Command line entry points.

Artifacts go to stdout (or --output); diagnostics and warnings go to
stderr.  Exit codes: 0 success, 1 invalid input, 2 numerical failure,
3 file I/O failure.  Failures print a one-line JSON object to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .calibration import (
    CalibrationTarget,
    calibrate_two_state,
    target_from_dict,
)
from .economy import (
    ConsumptionStats,
    Preferences,
    economy_from_dict,
    economy_to_dict,
)
from .errors import (
    NumericalError,
    SchemaError,
    UnattainableReturnError,
    ValidationError,
)
from .frontier import find_tangency, match_actual_return, sweep_frontier
from .ingest import (
    load_csv,
    real_consumption_growth,
    real_equity_return,
    real_return_from_nominal,
    summarize,
)
from .simulation import simulate

_FIGURES = {1: "historical.json", 2: "modern.json"}


class _Parser(argparse.ArgumentParser):
    # argparse exits with its own code 2 on bad flags; route through the
    # validation path instead so the exit-code contract holds
    def error(self, message):
        raise ValidationError(message)


def _sig10(value):
    """Round floats to 10 significant digits, recursing into containers."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(format(value, ".10g"))
    if isinstance(value, dict):
        return {k: _sig10(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sig10(v) for v in value]
    return value


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc: dict | list, output: str | None) -> None:
    _emit(json.dumps(_sig10(doc), indent=2) + "\n", output)


def _load_json(path: str) -> dict:
    with open(path) as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from None


def _fail(code: int, exc: Exception) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc),
               "exit_code": code}
    beta_rho = getattr(exc, "beta_rho", None)
    if beta_rho is not None:
        payload["beta_rho"] = float(format(beta_rho, ".10g"))
    print(json.dumps(payload), file=sys.stderr)
    return code


def _add_target_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mean", type=float, default=None,
                        help="mean net consumption growth (default 0)")
    parser.add_argument("--stddev", type=float, default=None,
                        help="stddev of net consumption growth")
    parser.add_argument("--serial-corr", type=float, default=None,
                        help="lag-1 autocorrelation of growth (default 0)")
    parser.add_argument("--risk-free", type=float, default=None,
                        help="mean riskless rate (default 0)")
    parser.add_argument("--actual-equity-return", type=float, default=None,
                        help="observed mean equity return, kept for matching")
    parser.add_argument("--target-file", default=None,
                        help="JSON file with the target statistics")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", default=None,
                        help="write the artifact here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="artifact format where both make sense")


def _resolve_target(args) -> CalibrationTarget:
    flags = (args.mean, args.stddev, args.serial_corr, args.risk_free,
             args.actual_equity_return)
    if args.target_file is not None:
        if any(v is not None for v in flags):
            raise ValidationError(
                "pass either --target-file or the statistic flags, not both"
            )
        return target_from_dict(_load_json(args.target_file))
    if args.stddev is None:
        raise ValidationError("need --stddev (or --target-file)")
    return CalibrationTarget(
        stats=ConsumptionStats(
            xi=args.mean if args.mean is not None else 0.0,
            delta=args.stddev,
            sigma_c=args.serial_corr if args.serial_corr is not None else 0.0,
        ),
        r_f=args.risk_free if args.risk_free is not None else 0.0,
        r_e_actual=args.actual_equity_return,
    )


def _resolve_economy(args):
    """(econ, beta, target-or-None) from --economy-file or target flags."""
    if getattr(args, "economy_file", None):
        doc = _load_json(args.economy_file)
        econ = economy_from_dict(doc)
        beta = args.beta if args.beta is not None else doc.get("beta")
        if beta is None:
            raise ValidationError(
                f"{args.economy_file} has no beta field; pass --beta"
            )
        beta = float(beta)
        target = target_from_dict(doc["target"]) if "target" in doc else None
        return econ, beta, target
    target = _resolve_target(args)
    econ, beta = calibrate_two_state(target)
    if args.beta is not None:
        beta = args.beta
    return econ, beta, target


def cmd_calibrate(args) -> int:
    target = _resolve_target(args)
    econ, beta = calibrate_two_state(target)
    if args.format != "json":
        raise ValidationError("calibrate emits JSON only")
    doc = economy_to_dict(econ)
    doc["alpha_f"] = 0.0
    doc["beta"] = beta
    doc["target"] = target.to_dict()
    _emit_json(doc, args.output)
    return 0


def _frontier_summary(args, econ, beta, target, figure=None, label=None):
    r_f = 1.0 / beta - 1.0
    curve = sweep_frontier(econ, beta, r_f,
                           alpha_range=(args.alpha_min, args.alpha_max),
                           step=args.alpha_step)
    tangency = find_tangency(curve, r_f)
    explicit = args.actual_return is not None
    actual = args.actual_return
    if actual is None and target is not None:
        actual = target.r_e_actual
    matched = None
    match_note = None
    if actual is not None:
        try:
            matched = match_actual_return(econ, beta, actual,
                                          alpha_range=(args.alpha_min,
                                                       args.alpha_max),
                                          step=args.alpha_step)
        except UnattainableReturnError:
            # a target inherited from the economy document should not
            # sink a deliberately restricted sweep; an explicit request
            # still fails hard
            if explicit:
                raise
            match_note = (f"return {actual:g} not attained on "
                          f"[{args.alpha_min:g}, {args.alpha_max:g}]")
            print(json.dumps({"warning": match_note}), file=sys.stderr)
    summary = {}
    if figure is not None:
        summary["figure"] = figure
        summary["label"] = label
    summary.update(tangency.to_dict())
    summary.update({
        "anchor": list(curve.anchor),
        "r_f": r_f,
        "beta": beta,
        "alpha_range": [args.alpha_min, args.alpha_max],
        "alpha_step": args.alpha_step,
        "n_points": len(curve.points),
        "infeasible_alphas": list(curve.infeasible),
        "actual_return": actual,
        "matched_alpha": matched,
        "match_note": match_note,
    })
    if args.curve_out:
        with open(args.curve_out, "w") as handle:
            handle.write(curve.to_csv())
    if args.format == "csv":
        _emit(curve.to_csv(), args.output)
    else:
        _emit_json(summary, args.output)
    return 0


def cmd_frontier(args) -> int:
    econ, beta, target = _resolve_economy(args)
    return _frontier_summary(args, econ, beta, target)


def cmd_simulate(args) -> int:
    econ, beta, _ = _resolve_economy(args)
    prefs = Preferences(alpha_e=args.alpha_e, alpha_f=args.alpha_f, beta=beta)
    if args.replications < 1:
        raise ValidationError("--replications must be >= 1")
    if args.format != "json":
        raise ValidationError("simulate emits JSON only")
    runs = [simulate(econ, prefs, args.steps, args.seed + k,
                     initial_state=args.initial_state).to_dict()
            for k in range(args.replications)]
    _emit_json(runs[0] if args.replications == 1 else runs, args.output)
    return 0


def _load_series(path: str, year_column: str | None, value_column: str):
    if year_column is not None:
        return load_csv(path, year_column, value_column)
    # auto-detect: annual files key on "year", sub-annual ones on "date"
    try:
        return load_csv(path, "year", value_column)
    except SchemaError:
        return load_csv(path, "date", value_column)


def cmd_stats(args) -> int:
    services = _load_series(args.services, args.year_column, args.value_column)
    nondurables = _load_series(args.nondurables, args.year_column,
                               args.value_column)
    growth = real_consumption_growth(services, nondurables)
    inflation = _load_series(args.inflation, args.year_column,
                             args.value_column)
    nominal = _load_series(args.yield_file, args.year_column,
                           args.value_column)
    r_f = real_return_from_nominal(nominal, inflation)
    index = _load_series(args.sp500, args.year_column, args.index_column)
    dividends = _load_series(args.sp500, args.year_column,
                             args.dividend_column)
    r_e = real_equity_return(index, dividends)
    if args.year_from is not None or args.year_to is not None:
        r_f = r_f.restrict(args.year_from, args.year_to)
        r_e = r_e.restrict(args.year_from, args.year_to)
        growth = growth.restrict(args.year_from, args.year_to)
    stats = summarize(r_f, r_e, growth)
    if args.format != "json":
        raise ValidationError("stats emits JSON only")
    _emit_json(stats.to_dict(), args.output)
    return 0


def cmd_reproduce(args) -> int:
    if args.figure not in _FIGURES:
        raise ValidationError(
            f"unknown figure {args.figure}; available: {sorted(_FIGURES)}"
        )
    fixture = resources.files("eqpremium").joinpath(
        "fixtures", _FIGURES[args.figure])
    doc = json.loads(fixture.read_text())
    target = target_from_dict(doc)
    econ, beta = calibrate_two_state(target)
    return _frontier_summary(args, econ, beta, target,
                             figure=args.figure, label=doc.get("label"))


def _add_sweep_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha-min", type=float, default=0.0)
    parser.add_argument("--alpha-max", type=float, default=12.0)
    parser.add_argument("--alpha-step", type=float, default=0.01)
    parser.add_argument("--curve-out", default=None,
                        help="also write the swept curve as CSV here")


def _add_economy_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--economy-file", default=None,
                        help="economy JSON produced by calibrate")
    parser.add_argument("--beta", type=float, default=None,
                        help="override the discount factor")
    _add_target_flags(parser)


def _build_parser() -> _Parser:
    parser = _Parser(prog="eqpremium",
                     description="Markov consumption economy toolkit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("calibrate",
                       help="build a two-state economy from growth statistics")
    _add_target_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("frontier",
                       help="sweep alpha_e and locate the tangency")
    _add_economy_flags(p)
    _add_sweep_flags(p)
    p.add_argument("--actual-return", type=float, default=None,
                   help="match this observed mean equity return")
    _add_output_flags(p)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("simulate",
                       help="Monte Carlo run against the analytic moments")
    _add_economy_flags(p)
    p.add_argument("--alpha-e", type=float, required=True)
    p.add_argument("--alpha-f", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replications", type=int, default=1,
                   help="independent runs, seeds seed, seed+1, ...")
    p.add_argument("--initial-state", type=int, default=None,
                   help="pin s_0 instead of drawing it from pi")
    _add_output_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("stats",
                       help="summary statistics from raw CSV series")
    p.add_argument("--services", required=True)
    p.add_argument("--nondurables", required=True)
    p.add_argument("--inflation", required=True)
    p.add_argument("--yield", dest="yield_file", required=True)
    p.add_argument("--sp500", required=True)
    p.add_argument("--year-column", default=None,
                   help="default: auto (year, then date)")
    p.add_argument("--value-column", default="value")
    p.add_argument("--index-column", default="real_index")
    p.add_argument("--dividend-column", default="real_dividend")
    p.add_argument("--from", dest="year_from", type=int, default=None)
    p.add_argument("--to", dest="year_to", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("reproduce",
                       help="rerun a bundled figure configuration")
    p.add_argument("--figure", type=int, required=True)
    _add_sweep_flags(p)
    p.add_argument("--actual-return", type=float, default=None)
    _add_output_flags(p)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            parser.print_help(sys.stderr)
            return 1
        return args.func(args)
    except ValidationError as exc:
        return _fail(1, exc)
    except NumericalError as exc:
        return _fail(2, exc)
    except OSError as exc:
        return _fail(3, exc)


if __name__ == "__main__":
    sys.exit(main())
