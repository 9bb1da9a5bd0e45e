"""Command-line front end: verification suites, scans, and plot data.

Subcommands
-----------
identities   exact rational identities (kernel moments, Beta-product
             reciprocity) over a range of indices
integrals    quadrature suites confronting integrals with their analytic
             targets: logmoment | weight-prime | reconstruction |
             weighted-moment | chain | all
scan         positivity verdict matrix over (index, alpha), or threshold
             bracketing with --threshold
plot-data    CSV curve samples of the kernels or transition functions

Examples
--------
    khabcheck identities --alpha 1/2 --n-max 10
    khabcheck integrals --suite logmoment --alpha 1
    khabcheck integrals --suite reconstruction --alpha 1/2 --n 0..3 --y 1/2,1,2
    khabcheck integrals --suite chain --alpha 1/2 --n 2 --q extremal
    khabcheck scan --n 1..8 --alpha-grid 1/10:1:1/10
    khabcheck scan --threshold --n 1..5 --tol 1e-6
    khabcheck plot-data --kernel --n 0,1,2 --points 200

alpha values are exact rationals ("1/2", "7/3"); floats are rejected so
that every certificate-bearing computation stays exact.  Reports are
deterministic: identical invocations with --no-timestamp produce
byte-identical output.  Exit codes: 0 all checks passed, 1 a mathematical
check failed or an integral did not converge, 2 usage error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import io
import json
import math
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .constants import beta_int, kernel_power_moment, rhs_constant
from .kernel import kernel_eval
from .positivity import Status, alpha_threshold, region_scan
from .quadrature import (
    QuadConfig,
    extremal_density_fn,
    integrate_log_moment,
    integrate_weight_prime_moment,
    verify_conjecture_chain,
    verify_reconstruction,
    verify_weighted_moment,
    DensityFunction,
)
from .transition import transition_evaluator

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational: {text!r} (write e.g. 1/2, not 0.5)")
    return Fraction(text)


def _parse_positive_rational(text: str) -> Fraction:
    value = _parse_rational(text)
    if value <= 0:
        raise ValueError(f"must be positive: {text!r}")
    return value


def _parse_rational_list(text: str) -> list[Fraction]:
    return [_parse_positive_rational(part) for part in text.split(",") if part.strip()]


def _parse_real_list(text: str) -> list[float]:
    """Positive reals for non-certificate parameters; rationals or decimals."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        value = float(Fraction(part)) if _RATIONAL_RE.match(part) else float(part)
        if not value > 0:
            raise ValueError(f"must be positive: {part!r}")
        out.append(value)
    return out


def _parse_int_set(text: str) -> list[int]:
    """Integer lists: "0..3" (inclusive range), "1,2,5", or "4"."""
    text = text.strip()
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty range: {text!r}")
        return list(range(lo, hi + 1))
    return sorted({int(part) for part in text.split(",") if part.strip()})


def _parse_alpha_grid(text: str) -> list[Fraction]:
    """Either "start:stop:step" with rational endpoints, or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:stop:step, got {text!r}")
        start, stop, step = (_parse_rational(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad grid bounds: {text!r}")
        grid = []
        value = start
        while value <= stop:
            grid.append(value)
            value += step
        return grid
    return _parse_rational_list(text)


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def _record(check: str, params: dict, status: str,
            target: Optional[float] = None, value: Optional[float] = None,
            residual: Optional[float] = None) -> dict:
    return {"check": check, "params": params, "target": target,
            "value": value, "residual": residual, "status": status}


def _render_params(params: dict) -> str:
    return ";".join(f"{k}={params[k]}" for k in sorted(params))


def _render_report(records: list[dict], config: dict, fmt: str,
                   timestamp: bool) -> str:
    summary = {
        PASS: sum(1 for r in records if r["status"] == PASS),
        FAIL: sum(1 for r in records if r["status"] == FAIL),
        INCONCLUSIVE: sum(1 for r in records if r["status"] == INCONCLUSIVE),
    }
    if fmt == "json":
        doc = {
            "schemaVersion": 1,
            "tool": {"name": "khabcheck", "version": __version__},
            "config": config,
            "records": records,
            "summary": summary,
        }
        if timestamp:
            doc["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    # CSV: the records table only; configuration lives in the invocation
    buf = io.StringIO()
    buf.write("check,params,target,value,residual,status\n")
    for r in records:
        cells = [
            r["check"],
            _render_params(r["params"]),
            "" if r["target"] is None else repr(r["target"]),
            "" if r["value"] is None else repr(r["value"]),
            "" if r["residual"] is None else repr(r["residual"]),
            r["status"],
        ]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(records: list[dict]) -> int:
    return 1 if any(r["status"] == FAIL for r in records) else 0


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_identities(args: argparse.Namespace) -> int:
    records = []
    for alpha in sorted(args.alpha):
        for n in range(0, args.n_max + 1):
            product = kernel_power_moment(alpha, n, "product")
            telescoped = kernel_power_moment(alpha, n, "sum")
            records.append(_record(
                "kernel-moment-identity",
                {"alpha": str(alpha), "n": n},
                PASS if product == telescoped else FAIL,
                target=float(product), value=float(telescoped),
                residual=float(telescoped - product),
            ))
        for n in range(1, args.n_max + 1):
            prod = beta_int(alpha, n) * rhs_constant(alpha, n).pi_coefficient
            records.append(_record(
                "beta-product-reciprocity",
                {"alpha": str(alpha), "n": n},
                PASS if prod == 1 else FAIL,
                target=1.0, value=float(prod), residual=float(prod - 1),
            ))
    config = {"command": "identities", "alpha": [str(a) for a in args.alpha],
              "nMax": args.n_max}
    _emit(_render_report(records, config, args.format, not args.no_timestamp), args.out)
    return _exit_code(records)


def _chain_density(kind: str, alpha: Fraction, n: int) -> DensityFunction:
    if kind == "extremal":
        return extremal_density_fn(alpha, n)
    return DensityFunction(lambda t: 0.0, "zero density",
                           power_at_zero=0.0, power_at_infinity=-10.0)


def _cmd_integrals(args: argparse.Namespace) -> int:
    cfg = QuadConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
    suites = ["logmoment", "weight-prime", "reconstruction", "weighted-moment",
              "chain"] if args.suite == "all" else [args.suite]
    records = []
    for suite in suites:
        if suite == "logmoment":
            tol = args.check_tol if args.check_tol is not None else 1e-8
            for alpha in sorted(args.alpha):
                result = integrate_log_moment(alpha, cfg)
                target = math.pi / float(alpha)
                ok = result.converged and abs(result.value - target) <= tol
                records.append(_record(
                    "log-weight-moment", {"alpha": str(alpha)},
                    PASS if ok else FAIL,
                    target=target, value=result.value,
                    residual=result.value - target,
                ))
        elif suite == "weight-prime":
            tol = args.check_tol if args.check_tol is not None else 1e-8
            for alpha in sorted(args.alpha):
                result = integrate_weight_prime_moment(alpha, cfg)
                ok = result.converged and abs(result.value + math.pi) <= tol
                records.append(_record(
                    "weight-derivative-moment", {"alpha": str(alpha)},
                    PASS if ok else FAIL,
                    target=-math.pi, value=result.value,
                    residual=result.value + math.pi,
                ))
        elif suite == "reconstruction":
            tol = args.check_tol if args.check_tol is not None else 1e-6
            for n in args.n:
                for alpha in sorted(args.alpha):
                    for y in args.y:
                        check = verify_reconstruction(n, alpha, y, cfg)
                        ok = check.quad.converged and abs(check.residual) <= tol
                        records.append(_record(
                            "reconstruction",
                            {"alpha": str(alpha), "n": n, "y": y},
                            PASS if ok else FAIL,
                            target=check.target, value=check.value,
                            residual=check.residual,
                        ))
        elif suite == "weighted-moment":
            tol = args.check_tol if args.check_tol is not None else 1e-6
            for n in args.n:
                for alpha in sorted(args.alpha):
                    check = verify_weighted_moment(n, alpha, cfg)
                    ok = check.quad.converged and abs(check.residual) <= tol
                    records.append(_record(
                        "weighted-transition-moment",
                        {"alpha": str(alpha), "n": n},
                        PASS if ok else FAIL,
                        target=check.target, value=check.value,
                        residual=check.residual,
                    ))
        elif suite == "chain":
            premise_tol = args.check_tol if args.check_tol is not None else 1e-6
            for n in args.n:
                if n < 1:
                    if args.suite == "all":
                        continue  # the combined run owns index 0 elsewhere
                    raise ValueError("chain suite needs conjecture index n >= 1")
                for alpha in sorted(args.alpha):
                    report = verify_conjecture_chain(
                        n, alpha, _chain_density(args.q, alpha, n),
                        cfg=cfg, premise_tol=premise_tol)
                    params = {"alpha": str(alpha), "n": n, "q": args.q,
                              "polyIndex": report.poly_index}
                    if not report.applicable:
                        records.append(_record(
                            "conjecture-chain",
                            {**params, "positivity": report.positivity.status.value},
                            INCONCLUSIVE,
                        ))
                        continue
                    records.append(_record(
                        "chain-premise", params,
                        PASS if report.premise_satisfied else FAIL,
                        target=0.0, value=report.premise_max_violation,
                        residual=report.premise_max_deviation,
                    ))
                    expect_equality = args.q == "extremal"
                    concl_ok = (report.equality_within_tol if expect_equality
                                else report.conclusion_satisfied)
                    records.append(_record(
                        "chain-conclusion", params,
                        PASS if concl_ok and report.conclusion.converged else FAIL,
                        target=report.rhs_value, value=report.conclusion.value,
                        residual=report.conclusion.value - report.rhs_value,
                    ))
    config = {"command": "integrals", "suite": args.suite,
              "alpha": [str(a) for a in sorted(args.alpha)],
              "n": args.n, "y": args.y, "q": args.q,
              "absTol": args.abs_tol, "relTol": args.rel_tol,
              "checkTol": args.check_tol}
    _emit(_render_report(records, config, args.format, not args.no_timestamp), args.out)
    return _exit_code(records)


def _cmd_scan(args: argparse.Namespace) -> int:
    records = []
    if args.threshold:
        for n in args.n:
            lo, hi = alpha_threshold(n, args.tol)
            width = float(hi - lo)
            records.append(_record(
                "alpha-threshold",
                {"polyIndex": n, "conjectureN": n + 1,
                 "lo": str(lo), "hi": str(hi), "tol": args.tol},
                PASS if width <= args.tol else FAIL,
                value=float(lo), residual=width,
            ))
        config = {"command": "scan", "mode": "threshold", "n": args.n,
                  "tol": args.tol}
    else:
        if args.alpha_grid is None:
            raise ValueError("scan needs --alpha-grid (or --threshold)")
        report = region_scan(args.n, args.alpha_grid)
        for cell in report.cells:
            verdict = cell.verdict
            params = {"polyIndex": cell.poly_index,
                      "conjectureN": cell.conjecture_n,
                      "alpha": str(cell.alpha),
                      "verdict": verdict.status.value}
            if verdict.certificate:
                params["certificate"] = verdict.certificate
            if verdict.witness is not None:
                params["witness"] = str(verdict.witness)
            records.append(_record(
                "positivity-verdict", params, PASS,
                value=1.0 if verdict.status is Status.NONNEGATIVE else 0.0,
            ))
        config = {"command": "scan", "mode": "region", "n": args.n,
                  "alphaGrid": [str(a) for a in args.alpha_grid]}
    _emit(_render_report(records, config, args.format, not args.no_timestamp), args.out)
    return _exit_code(records)


def _cmd_plotdata(args: argparse.Namespace) -> int:
    if args.points < 2:
        raise ValueError("--points must be at least 2")
    buf = io.StringIO()
    if args.kernel:
        indices = args.n
        buf.write("x," + ",".join(f"kernel_n{n}" for n in indices) + "\n")
        for i in range(1, args.points + 1):
            x = i / args.points
            row = [repr(x)] + [repr(kernel_eval(n, x)) for n in indices]
            buf.write(",".join(row) + "\n")
    else:
        if args.alpha is None or len(args.alpha) != 1:
            raise ValueError("--transition needs exactly one --alpha")
        alpha = args.alpha[0]
        evaluators = [(n, transition_evaluator(n, alpha)) for n in args.n]
        buf.write("t," + ",".join(f"transition_n{n}" for n, _ in evaluators) + "\n")
        lo, hi = math.log10(1e-2), math.log10(1e2)
        for i in range(args.points):
            t = 10.0 ** (lo + i * (hi - lo) / (args.points - 1))
            row = [repr(t)] + [repr(phi(t)) for _, phi in evaluators]
            buf.write(",".join(row) + "\n")
    _emit(buf.getvalue(), args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp for byte-identical reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khabcheck",
        description="verification suites for the integral-inequality reduction",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_id = sub.add_parser("identities", help="exact rational identity suite")
    p_id.add_argument("--alpha", type=_parse_rational_list, required=True,
                      metavar="P/Q[,P/Q...]")
    p_id.add_argument("--n-max", type=int, default=10)
    _add_common(p_id)
    p_id.set_defaults(func=_cmd_identities)

    p_int = sub.add_parser("integrals", help="quadrature verification suites")
    p_int.add_argument("--suite", required=True,
                       choices=("logmoment", "weight-prime", "reconstruction",
                                "weighted-moment", "chain", "all"))
    p_int.add_argument("--alpha", type=_parse_rational_list, required=True,
                       metavar="P/Q[,P/Q...]")
    p_int.add_argument("--n", type=_parse_int_set, default=None,
                       metavar="LO..HI|N[,N...]")
    p_int.add_argument("--y", type=_parse_real_list, default=None,
                       metavar="Y[,Y...]")
    p_int.add_argument("--q", choices=("extremal", "zero"), default="extremal",
                       help="density driven through the chain suite")
    p_int.add_argument("--abs-tol", type=float, default=1e-10)
    p_int.add_argument("--rel-tol", type=float, default=1e-9)
    p_int.add_argument("--check-tol", type=float, default=None,
                       help="override the per-suite pass tolerance")
    _add_common(p_int)
    p_int.set_defaults(func=_cmd_integrals)

    p_scan = sub.add_parser("scan", help="positivity region scan / threshold search")
    p_scan.add_argument("--n", type=_parse_int_set, required=True,
                        metavar="LO..HI|N[,N...]",
                        help="polynomial indices to scan")
    p_scan.add_argument("--alpha-grid", type=_parse_alpha_grid, default=None,
                        metavar="START:STOP:STEP|LIST")
    p_scan.add_argument("--threshold", action="store_true",
                        help="bracket the nonnegativity threshold per index")
    p_scan.add_argument("--tol", type=float, default=1e-6)
    _add_common(p_scan)
    p_scan.set_defaults(func=_cmd_scan)

    p_plot = sub.add_parser("plot-data", help="CSV curve samples")
    which = p_plot.add_mutually_exclusive_group(required=True)
    which.add_argument("--kernel", action="store_true")
    which.add_argument("--transition", action="store_true")
    p_plot.add_argument("--n", type=_parse_int_set, default=[0, 1, 2],
                        metavar="LO..HI|N[,N...]")
    p_plot.add_argument("--alpha", type=_parse_rational_list, default=None,
                        metavar="P/Q")
    p_plot.add_argument("--points", type=int, default=200)
    p_plot.set_defaults(format="csv", no_timestamp=True)
    p_plot.add_argument("--out")
    p_plot.set_defaults(func=_cmd_plotdata)

    return parser


def _suite_defaults(args: argparse.Namespace) -> None:
    if args.command != "integrals":
        return
    if args.n is None:
        args.n = list(range(1, 4)) if args.suite == "chain" else list(range(0, 5))
    if args.y is None:
        args.y = [0.5, 1.0, 2.0]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _suite_defaults(args)
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"khabcheck: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
