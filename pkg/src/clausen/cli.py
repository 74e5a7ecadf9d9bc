"""Command-line interface: `eval` for single values, `verify` for suites.

Exit codes: 0 success, 1 at least one verification record failed, 2 bad
arguments or a domain/pole condition, 3 report I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bessel_sums import BesselSumParams, eq24_3f2
from .closed_form import LimitPolicy, Theorem1Params, miller_paris, special_case, theorem1
from .errors import ClausenError
from .hypergeom import SeriesConfig, sum_3f2
from .verify import (GridSpec, format_complex, format_float, parse_complex,
                     run_suite, summarize, write_report)

_SUITES = ("theorem1", "miller_paris", "identities", "bessel")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="clausen",
        description="Evaluate and verify closed forms for unit-argument "
                    "hypergeometric sums and Bessel-series expansions.")
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate one quantity by a chosen method")
    pe.add_argument("--method", required=True,
                    choices=["series", "theorem1", "special", "miller-paris", "eq24"])
    pe.add_argument("--c", type=parse_complex, help="complex, e.g. 0.5+1.25i")
    pe.add_argument("--d", type=parse_complex)
    pe.add_argument("--n", type=int)
    pe.add_argument("--m", type=int)
    pe.add_argument("--p", type=int)
    pe.add_argument("--mu", type=float)
    pe.add_argument("--nu", type=float)
    pe.add_argument("--a", type=parse_complex)
    pe.add_argument("--b", type=parse_complex)
    pe.add_argument("--chi", type=float,
                    help="series argument for --method series (default 1)")
    pe.add_argument("--rel-tol", dest="rel_tol", type=float, default=1e-12)
    pe.add_argument("--max-terms", dest="max_terms", type=int, default=10_000_000)
    pe.add_argument("--limit-mode", dest="limit_mode", choices=["error", "epsilon"],
                    default="error",
                    help="behaviour at removable singular parameters")
    pe.add_argument("--epsilon", type=float, default=1e-5)

    pv = sub.add_parser("verify", help="run a seeded verification suite")
    pv.add_argument("--suite", required=True, choices=_SUITES + ("all",))
    pv.add_argument("--samples", type=int, default=100,
                    help="total sampled points per suite")
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--out", help="report path (default: CLAUSEN_REPORT_DIR or cwd)")
    pv.add_argument("--format", choices=["table", "objects"], default="table")
    pv.add_argument("--tol", type=float, default=None,
                    help="override every record tolerance in the suite")
    pv.add_argument("--max-terms", dest="max_terms", type=int, default=None,
                    help="bessel suite: direct-summation term count (default 1e5)")
    return ap


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ClausenError(f"--method {args.method} requires {', '.join(missing)}")


def _print_result(method, value, err_est, terms_used):
    value = complex(value)
    text = format_float(value.real) if value.imag == 0.0 else format_complex(value)
    print(f"method: {method}")
    print(f"value: {text}")
    print(f"err_est: {format_float(err_est)}")
    print(f"terms_used: {terms_used}")


def _cmd_eval(args) -> int:
    cfg = SeriesConfig(rel_tol=args.rel_tol, max_terms=args.max_terms)
    policy = LimitPolicy(mode="epsilon_limit" if args.limit_mode == "epsilon" else "error",
                         epsilon=args.epsilon)
    if args.method == "series":
        _require(args, "c", "d", "n")
        x = 1.0 if args.chi is None else args.chi
        r = sum_3f2(1.0, 1.0, args.c, args.d, args.n + 2.0, x, cfg)
        _print_result("series", r.value, r.err_est, r.terms_used)
        if not r.converged:
            print("warning: series not converged at max_terms; "
                  "err_est is the conservative bound", file=sys.stderr)
    elif args.method == "theorem1":
        _require(args, "c", "d", "n")
        r = theorem1(Theorem1Params(c=args.c, d=args.d, n=args.n), policy)
        _print_result("theorem1", r.value, r.err_est, r.terms_used)
    elif args.method == "special":
        _require(args, "c", "d", "n")
        v = special_case(Theorem1Params(c=args.c, d=args.d, n=args.n), policy)
        _print_result("special", v, 0.0, args.n + 1)
    elif args.method == "miller-paris":
        _require(args, "a", "c", "d", "m", "p")
        v = miller_paris(args.a, args.c, args.d, args.m, args.p)
        _print_result("miller-paris", v, 0.0, args.m + args.p)
    else:  # eq24
        _require(args, "mu", "nu", "n")
        v = eq24_3f2(BesselSumParams(mu=args.mu, nu=args.nu, a=1.0, b=1.0, n=args.n))
        _print_result("eq24", v, 0.0, args.n + 1)
    return 0


def _cmd_verify(args) -> int:
    grid = GridSpec(samples=args.samples, seed=args.seed)
    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    records = []
    for s in suites:
        records += run_suite(s, grid, tol=args.tol, bessel_m=args.max_terms)
    ext = "csv" if args.format == "table" else "jsonl"
    if args.out:
        path = args.out
    else:
        base = os.environ.get("CLAUSEN_REPORT_DIR", ".")
        path = os.path.join(base, f"verify_{args.suite}_{args.seed}.{ext}")
    write_report(records, path, fmt=args.format)
    failed_total = 0
    for s in suites:
        ok, tot = summarize(records).get(s, (0, 0))
        failed_total += tot - ok
        print(f"suite {s}: {ok}/{tot} pass")
    print(f"report: {path}")
    return 0 if failed_total == 0 else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        return _cmd_verify(args)
    except OSError as e:
        print(f"error: report I/O failed: {e}", file=sys.stderr)
        return 3
    except (ClausenError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
