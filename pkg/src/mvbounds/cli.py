"""Command-line front end.

Subcommands::

    bounds    worst-case capped mean, best-case call payoff, tail envelope
    extremal  the attaining two-point distribution in raw scale
    verify    closed forms vs. the brute-force oracle, plus random sampling
    sweep     CSV table of the bounds across a strike range

Exit codes: 0 success, 1 verification failure, 2 argument error,
3 domain/infeasibility error, 4 I/O error.  All numbers are printed with 12
significant digits.  Documents go to stdout unless ``--out`` is given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any

import numpy as np

from .closed_forms import dlp_bounds, p_star, scarf_min, threshold_strike
from .errors import (
    DegenerateStrikeError,
    IllConditionedError,
    InfeasibleError,
    InvalidSpecError,
    MVBoundsError,
    OutOfRangeError,
)
from .types import Branch, MomentSpec, ScarfSolution, Strike
from .verify import verify_dlp, verify_scarf

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

SWEEP_HEADER = "c,scarf_min,lo_max,branch,p_opt,dlp_upper_at_pstar"


def fmt12(x: float) -> str:
    return f"{float(x):.12g}"


def round12(value: Any) -> Any:
    """Recursively round floats to 12 significant digits for emission."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(fmt12(value))
    if isinstance(value, dict):
        return {k: round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round12(v) for v in value]
    return value


class _UsageError(Exception):
    """Config invariant violated; reported on stderr with exit code 2."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise _UsageError(message)


def _finite(name: str, value: float) -> None:
    _require(math.isfinite(value), f"{name} must be finite")


def _spec_from(args: argparse.Namespace) -> MomentSpec:
    _finite("--mean", args.mean)
    _finite("--std", args.std)
    _require(args.std > 0.0, "--std must be positive")
    return MomentSpec(mean=args.mean, std_dev=args.std)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _IoError(str(exc)) from exc


class _IoError(Exception):
    pass


def _emit_document(doc: dict, args: argparse.Namespace) -> None:
    if getattr(args, "format", "json") == "csv":
        doc = round12(doc)
        keys = [k for k, v in doc.items() if not isinstance(v, (dict, list))]
        header = ",".join(keys)
        row = ",".join("" if doc[k] is None else str(doc[k]) for k in keys)
        _emit(header + "\n" + row + "\n", args.out)
    else:
        _emit(json.dumps(round12(doc), indent=2) + "\n", args.out)


def _solution_payload(spec: MomentSpec, solution: ScarfSolution) -> dict:
    return {
        "scarf_min": solution.min_winsorized,
        "lo_max": solution.max_call,
        "branch": str(solution.branch),
        "p_opt": solution.p_opt,
        "threshold_strike": threshold_strike(spec),
    }


def _run_bounds(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    _finite("--strike", args.strike)
    if args.tail_prob is not None:
        _require(0.0 <= args.tail_prob <= 1.0, "--tail-prob must lie in [0, 1]")
    strike = Strike(args.strike)
    solution = scarf_min(spec, strike)
    if solution.branch is Branch.DEGENERATE:
        raise DegenerateStrikeError("degenerate strike: the cap binds for every feasible outcome")
    doc = {"mean": spec.mean, "std_dev": spec.std_dev, "strike": strike.value}
    if args.tail_prob is not None:
        doc["tail_prob"] = args.tail_prob
    doc.update(_solution_payload(spec, solution))
    if args.tail_prob is not None:
        envelope = dlp_bounds(spec, strike, args.tail_prob)
        doc["dlp_lower"] = envelope.lower
        doc["dlp_upper"] = envelope.upper
    _emit_document(doc, args)
    return EXIT_OK


def _run_extremal(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    _finite("--strike", args.strike)
    strike = Strike(args.strike)
    solution = scarf_min(spec, strike)
    if solution.extremal is None:
        raise DegenerateStrikeError("degenerate strike: no extremal two-point distribution")
    extremal = solution.extremal
    assert abs(extremal.winsorized_mean(strike.value) - solution.min_winsorized) <= 1e-12
    doc = {
        "mean": spec.mean,
        "std_dev": spec.std_dev,
        "strike": strike.value,
        "low": extremal.low,
        "high": extremal.high,
        "p_low": extremal.p_low,
        "branch": str(solution.branch),
    }
    _emit_document(doc, args)
    return EXIT_OK


def _run_verify(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    _finite("--strike", args.strike)
    _require(args.grid_points >= 3, "--grid-points must be at least 3")
    _require(args.trials >= 0, "--trials must be nonnegative")
    strike = Strike(args.strike)
    scarf_report = verify_scarf(
        spec,
        strike,
        grid_points=args.grid_points,
        trials=args.trials,
        seed=args.seed,
        augment=not args.no_augment,
    )
    dlp_report = verify_dlp(
        spec,
        strike,
        p0_grid=args.grid_points,
        trials=args.trials,
        seed=args.seed,
        grid_points=args.grid_points,
    )
    passed = scarf_report.passed and dlp_report.passed
    doc = {
        "mean": spec.mean,
        "std_dev": spec.std_dev,
        "strike": strike.value,
        "grid_points": args.grid_points,
        "trials": args.trials,
        "seed": args.seed,
        "augment": not args.no_augment,
        "scarf": scarf_report.as_dict(),
        "dlp": dlp_report.as_dict(),
        "passed": passed,
    }
    _emit_document(doc, args)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def _sweep_rows(spec: MomentSpec, strikes: list[tuple[float, bool]]) -> list[dict]:
    rows = []
    for c, at_threshold in strikes:
        solution = scarf_min(spec, Strike(c))
        c_std = (c - spec.mean) / spec.std_dev
        tail = 1.0 - p_star(c_std)
        branch = "Threshold" if at_threshold else str(solution.branch)
        rows.append(
            {
                "c": c,
                "scarf_min": solution.min_winsorized,
                "lo_max": solution.max_call,
                "branch": branch,
                "p_opt": solution.p_opt,
                "dlp_upper_at_pstar": dlp_bounds(spec, Strike(c), tail).upper,
            }
        )
    return rows


def _run_sweep(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    _finite("--strike-min", args.strike_min)
    _finite("--strike-max", args.strike_max)
    _require(args.steps >= 2, "--steps must be at least 2")
    _require(args.strike_min < args.strike_max, "--strike-min must be below --strike-max")
    grid = np.linspace(args.strike_min, args.strike_max, args.steps)
    strikes = [(float(c), False) for c in grid]
    # Expose the branch seam: the exact threshold gets its own flagged row
    # whenever it falls strictly inside the range and off the grid.
    seam = threshold_strike(spec)
    if args.strike_min < seam < args.strike_max and seam not in grid:
        strikes.append((seam, True))
    strikes.sort(key=lambda pair: pair[0])
    rows = _sweep_rows(spec, strikes)
    if args.format == "json":
        doc = {"mean": spec.mean, "std_dev": spec.std_dev, "rows": rows}
        _emit(json.dumps(round12(doc), indent=2) + "\n", args.out)
        return EXIT_OK
    lines = [SWEEP_HEADER]
    for row in rows:
        p_opt = "" if row["p_opt"] is None else fmt12(row["p_opt"])
        lines.append(
            ",".join(
                [
                    fmt12(row["c"]),
                    fmt12(row["scarf_min"]),
                    fmt12(row["lo_max"]),
                    row["branch"],
                    p_opt,
                    fmt12(row["dlp_upper_at_pstar"]),
                ]
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvbounds",
        description="Sharp mean-variance bounds on capped expectations and call payoffs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, strike: bool) -> None:
        p.add_argument("--mean", type=float, required=True, help="mean of the distribution")
        p.add_argument("--std", type=float, required=True, help="standard deviation (> 0)")
        if strike:
            p.add_argument("--strike", type=float, required=True, help="cap / exercise threshold")
        p.add_argument("--out", type=str, default=None, help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default=None)

    p_bounds = sub.add_parser("bounds", help="closed-form bounds at one strike")
    add_common(p_bounds, strike=True)
    p_bounds.add_argument("--tail-prob", type=float, default=None, help="known P(X > strike)")
    p_bounds.set_defaults(func=_run_bounds, default_format="json")

    p_extremal = sub.add_parser("extremal", help="attaining two-point distribution")
    add_common(p_extremal, strike=True)
    p_extremal.set_defaults(func=_run_extremal, default_format="json")

    p_verify = sub.add_parser("verify", help="closed forms vs. brute-force oracle")
    add_common(p_verify, strike=True)
    p_verify.add_argument("--grid-points", type=int, default=200)
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--no-augment",
        action="store_true",
        help="do not add the strike and extremal support to the oracle grid",
    )
    p_verify.set_defaults(func=_run_verify, default_format="json")

    p_sweep = sub.add_parser("sweep", help="bounds across a strike range (CSV)")
    add_common(p_sweep, strike=False)
    p_sweep.add_argument("--strike-min", type=float, required=True)
    p_sweep.add_argument("--strike-max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.set_defaults(func=_run_sweep, default_format="csv")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidSpecError, DegenerateStrikeError, InfeasibleError, IllConditionedError) as exc:
        _emit(json.dumps({"error": str(exc)}) + "\n", None)
        return EXIT_DOMAIN
    except OutOfRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MVBoundsError as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
