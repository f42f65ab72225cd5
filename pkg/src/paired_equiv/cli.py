"""Command-line interface.

Subcommands
-----------
test      run both tests on one table (flags or a CSV of tables)
disturb   unit-disturbance diagnostic, eight-row report
region    acceptance-region boundary points
size      exact size surface over the (rho, pi) null space
power     exact power surface over a (p10, p01) grid
mc        seeded Monte Carlo cross-check of one exact value

Exit codes: 0 accept consensus (or file written), 2 bad input or unwritable
output, 3 reject consensus, 4 method disagreement (for ``disturb``: the
increase-sample recommendation).

Surface and region commands write CSV or JSON; ``--format svg`` renders a
matplotlib figure and writes the CSV data next to it.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import DomainError
from .evaluation import (
    _reject_probability,
    decision_map,
    mc_estimate,
    power_surface,
    region_boundary,
    size_surface,
)
from .inference import (
    ACCEPT,
    MARGIN,
    MCNEMAR,
    REJECT,
    PairedCounts,
    TestResult,
    disturb,
    margin_test,
    mcnemar_test,
)
from .report import (
    boundaries_to_csv,
    boundaries_to_json,
    render_region_svg,
    render_surface_svg,
    results_to_json,
    surface_to_csv,
    surface_to_json,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REJECT = 3
EXIT_DISAGREE = 4


def _default_threads() -> int:
    env = os.environ.get("PAIRED_EQUIV_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _add_counts_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="total number of pairs")
    p.add_argument("--x10", type=int, help="first discordant count")
    p.add_argument("--x01", type=int, help="second discordant count")
    p.add_argument("--x00", type=int, default=None, help="optional concordant count")
    p.add_argument("--x11", type=int, default=None, help="optional concordant count")
    p.add_argument("--input", type=str, default=None,
                   help="CSV of tables with header n,x10,x01[,x00,x11]")


def _add_output_args(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", type=str, default=None, help="output path")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp field from outputs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paired-equiv",
        description="Equivalence tests and exact operating characteristics "
                    "for paired binary data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="run McNemar and margin tests")
    _add_counts_args(p_test)
    p_test.add_argument("--alpha", type=float, default=0.05)
    p_test.add_argument("--method", choices=[MCNEMAR, MARGIN, "both"], default="both")
    _add_output_args(p_test, ("json",))

    p_dist = sub.add_parser("disturb", help="unit-disturbance diagnostic")
    _add_counts_args(p_dist)
    p_dist.add_argument("--alpha", type=float, default=0.05)
    _add_output_args(p_dist, ("json",))

    p_reg = sub.add_parser("region", help="acceptance-region boundaries")
    p_reg.add_argument("--n", type=int, required=True)
    p_reg.add_argument("--alpha", type=float, default=0.05)
    p_reg.add_argument("--method", choices=[MCNEMAR, MARGIN, "both"], default="both")
    _add_output_args(p_reg, ("csv", "json", "svg"))

    p_size = sub.add_parser("size", help="exact size surface over (rho, pi)")
    p_size.add_argument("--n", type=int, required=True)
    p_size.add_argument("--alpha", type=float, default=0.05)
    p_size.add_argument("--method", choices=[MCNEMAR, MARGIN, "both"], default="both")
    p_size.add_argument("--rho-min", type=float, default=-0.99)
    p_size.add_argument("--rho-max", type=float, default=0.99)
    p_size.add_argument("--rho-steps", type=int, default=100)
    p_size.add_argument("--pi-steps", type=int, default=99)
    p_size.add_argument("--threads", type=int, default=None)
    _add_output_args(p_size, ("csv", "json", "svg"))

    p_pow = sub.add_parser("power", help="exact power surface over (p10, p01)")
    p_pow.add_argument("--n", type=int, required=True)
    p_pow.add_argument("--alpha", type=float, default=0.05)
    p_pow.add_argument("--method", choices=[MCNEMAR, MARGIN, "both"], default="both")
    p_pow.add_argument("--p10-min", type=float, default=0.005)
    p_pow.add_argument("--p10-max", type=float, default=0.745)
    p_pow.add_argument("--p01-min", type=float, default=0.005)
    p_pow.add_argument("--p01-max", type=float, default=0.745)
    p_pow.add_argument("--grid-steps", type=int, default=99)
    p_pow.add_argument("--threads", type=int, default=None)
    _add_output_args(p_pow, ("csv", "json", "svg"))

    p_mc = sub.add_parser("mc", help="Monte Carlo cross-check of one exact value")
    p_mc.add_argument("--n", type=int, required=True)
    p_mc.add_argument("--alpha", type=float, default=0.05)
    p_mc.add_argument("--method", choices=[MCNEMAR, MARGIN], required=True)
    p_mc.add_argument("--p10", type=float, required=True)
    p_mc.add_argument("--p01", type=float, required=True)
    p_mc.add_argument("--trials", type=int, default=100000)
    p_mc.add_argument("--seed", type=int, default=0)

    return parser


def _timestamp(args) -> str | None:
    if getattr(args, "no_timestamp", False):
        return None
    return datetime.now(timezone.utc).isoformat()


def _load_tables(args) -> list[PairedCounts]:
    if args.input is not None:
        tables = []
        with open(args.input, newline="") as fh:
            for row in csv.DictReader(fh):
                tables.append(
                    PairedCounts(
                        n=int(row["n"]),
                        x10=int(row["x10"]),
                        x01=int(row["x01"]),
                        x00=int(row["x00"]) if row.get("x00") else None,
                        x11=int(row["x11"]) if row.get("x11") else None,
                    )
                )
        if not tables:
            raise DomainError(f"no tables found in {args.input!r}")
        return tables
    if args.n is None or args.x10 is None or args.x01 is None:
        raise DomainError("--n, --x10 and --x01 are required without --input")
    return [PairedCounts(n=args.n, x10=args.x10, x01=args.x01,
                         x00=args.x00, x11=args.x11)]


def _result_row(r: TestResult, c: PairedCounts) -> dict:
    return {
        "method": r.method,
        "n": c.n,
        "x10": c.x10,
        "x01": c.x01,
        "alpha": r.alpha,
        "statistic": r.statistic,
        "p_value": r.p_value,
        "decision": r.decision,
        "bounds": list(r.bounds) if r.bounds else None,
        "p_hat": r.p_hat,
    }


def _print_result_table(rows: list[dict]) -> None:
    header = f"{'method':<9}{'n':>6}{'x10':>6}{'x01':>6}{'p_value':>10}  {'decision':<10}{'bounds'}"
    print(header)
    for r in rows:
        bounds = f"[{r['bounds'][0]}, {r['bounds'][1]}]" if r["bounds"] else "-"
        print(
            f"{r['method']:<9}{r['n']:>6}{r['x10']:>6}{r['x01']:>6}"
            f"{r['p_value']:>10.4f}  {r['decision']:<10}{bounds}"
        )


def _consensus_code(results: list[TestResult]) -> int:
    decisions = {r.decision for r in results}
    if decisions == {ACCEPT}:
        return EXIT_OK
    if decisions == {REJECT}:
        return EXIT_REJECT
    return EXIT_DISAGREE


def _cmd_test(args) -> int:
    tables = _load_tables(args)
    rows: list[dict] = []
    codes: list[int] = []
    for c in tables:
        results = []
        if args.method in (MCNEMAR, "both"):
            results.append(mcnemar_test(c, args.alpha))
        if args.method in (MARGIN, "both"):
            results.append(margin_test(c, args.alpha))
        rows.extend(_result_row(r, c) for r in results)
        codes.append(_consensus_code(results))
    _print_result_table(rows)
    if args.out:
        Path(args.out).write_text(results_to_json(rows, _timestamp(args)))
    if all(code == codes[0] for code in codes):
        return codes[0]
    return EXIT_DISAGREE


def _cmd_disturb(args) -> int:
    tables = _load_tables(args)
    if len(tables) != 1:
        raise DomainError("disturb expects exactly one table")
    report = disturb(tables[0], args.alpha)
    rows = []
    for variant in report.variants:
        if variant.counts is None:
            continue
        for result in (variant.mcnemar, variant.margin):
            row = _result_row(result, variant.counts)
            row["variant"] = variant.label
            rows.append(row)
    header = (
        f"{'variant':<12}{'method':<9}{'n':>6}{'x10':>6}{'x01':>6}"
        f"{'p_value':>10}  {'decision':<10}"
    )
    print(header)
    for r in rows:
        print(
            f"{r['variant']:<12}{r['method']:<9}{r['n']:>6}{r['x10']:>6}{r['x01']:>6}"
            f"{r['p_value']:>10.4f}  {r['decision']:<10}"
        )
    print(f"recommendation: {report.recommendation}")
    if args.out:
        payload = {"rows": rows, "recommendation": report.recommendation}
        Path(args.out).write_text(results_to_json([payload], _timestamp(args)))
    return {ACCEPT: EXIT_OK, REJECT: EXIT_REJECT}.get(report.recommendation, EXIT_DISAGREE)


def _methods(arg: str) -> list[str]:
    return [MCNEMAR, MARGIN] if arg == "both" else [arg]


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _svg_sibling(out: str) -> str:
    path = Path(out)
    return str(path.with_suffix(".csv")) if path.suffix else out + ".csv"


def _cmd_region(args) -> int:
    boundaries = {
        method: region_boundary(decision_map(args.n, args.alpha, method))
        for method in _methods(args.method)
    }
    ts = _timestamp(args)
    if args.format == "csv":
        _emit(boundaries_to_csv(boundaries, ts), args.out)
    elif args.format == "json":
        _emit(boundaries_to_json(boundaries, args.n, args.alpha, ts), args.out)
    else:
        if args.out is None:
            raise DomainError("--format svg requires --out")
        render_region_svg(boundaries, args.n, args.alpha, args.out)
        Path(_svg_sibling(args.out)).write_text(boundaries_to_csv(boundaries, ts))
    return EXIT_OK


def _surface_out(args, method: str, n_methods: int) -> str | None:
    if args.out is None:
        return None
    if n_methods == 1:
        return args.out
    path = Path(args.out)
    return str(path.with_name(f"{path.stem}_{method}{path.suffix}"))


def _cmd_surface(args, kind: str) -> int:
    methods = _methods(args.method)
    if args.out is None and (len(methods) > 1 or args.format == "svg"):
        raise DomainError("--out is required for svg output or --method both")
    threads = args.threads if args.threads is not None else _default_threads()
    ts = _timestamp(args)
    for method in methods:
        if kind == "size":
            grid = size_surface(
                args.n, args.alpha, method,
                rho_grid=np.linspace(args.rho_min, args.rho_max, args.rho_steps),
                pi_steps=args.pi_steps,
                threads=threads,
            )
        else:
            grid = power_surface(
                args.n, args.alpha, method,
                p10_grid=np.linspace(args.p10_min, args.p10_max, args.grid_steps),
                p01_grid=np.linspace(args.p01_min, args.p01_max, args.grid_steps),
                threads=threads,
            )
        out = _surface_out(args, method, len(methods))
        if args.format == "csv":
            _emit(surface_to_csv(grid, ts), out)
        elif args.format == "json":
            _emit(surface_to_json(grid, ts), out)
        else:
            render_surface_svg(grid, out)
            Path(_svg_sibling(out)).write_text(surface_to_csv(grid, ts))
    return EXIT_OK


def _cmd_mc(args) -> int:
    estimate, stderr = mc_estimate(
        args.n, args.alpha, args.method, args.p10, args.p01, args.trials, args.seed
    )
    dm = decision_map(args.n, args.alpha, args.method)
    exact = _reject_probability(dm, args.p10, args.p01)
    sigmas = abs(estimate - exact) / stderr if stderr > 0 else 0.0
    print(f"estimate  {estimate:.6f}")
    print(f"stderr    {stderr:.6f}")
    print(f"exact     {exact:.6f}")
    print(f"|diff|/se {sigmas:.2f}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "test": _cmd_test,
        "disturb": _cmd_disturb,
        "region": _cmd_region,
        "size": lambda a: _cmd_surface(a, "size"),
        "power": lambda a: _cmd_surface(a, "power"),
        "mc": _cmd_mc,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
