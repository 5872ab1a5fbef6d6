"""Command-line front end: dinicross VERB [options].

Data go to stdout as CSV (or a JSON report for `verify`), diagnostics to
stderr.  Exit status is 0 on success, 1 when a verified claim has
violations, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import sys
from pathlib import Path

from . import inequality_lab, rayleigh, zero_finder
from .errors import DinicrossError
from .special_core import TAGS, evaluate

ZERO_FNS = ("J", "dini", "cross", "dini-prime", "calD-prime", "calW-prime", "W-prime")


def _g(v) -> str:
    return f"{v:.17g}"


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _cmd_eval(a, out):
    r = evaluate(a.fn, a.nu, a.x, a.deriv)
    out.write(_g(r.value) + "\n")
    return 0


def _cmd_zeros(a, out):
    out.write(zero_finder.zeros(a.fn, a.nu, a.count, a.tol).to_csv())
    return 0


def _cmd_rayleigh(a, out):
    if a.max_order < 1:
        raise DinicrossError("--max-order must be at least 1")
    lines = [rayleigh.CSV_HEADER]
    for m in range(1, a.max_order + 1):
        lines.append(rayleigh.rayleigh(a.family, a.nu, m, a.method).csv_row())
    out.write("\n".join(lines) + "\n")
    return 0


def _cmd_bounds(a, out):
    lo, hi = rayleigh.smallest_zero_bounds(a.target, a.nu, a.order)
    power = 4 if a.target == "gamma1" else 2
    out.write(f"target,nu,order,power,lower,upper\n{a.target},{_g(a.nu)},{a.order},{power},{_g(lo)},{_g(hi)}\n")
    return 0


def _cmd_verify(a, out):
    rep = inequality_lab.verify(a.claim, nu=a.nu, nu_grid=a.nu_grid, fractions=a.grid_frac, count=a.count)
    out.write(rep.to_json() + "\n")
    return 0 if rep.passed else 1


def _cmd_figure1(a, out):
    rows = zero_finder.figure1_rows(a.nu, a.xmax, a.step)
    Path(a.out).write_text(zero_finder.figure1_csv(rows), encoding="utf-8", newline="\n")
    out.write("n,crossing\n")
    for i, x in enumerate(zero_finder.crossings(rows), 1):
        out.write(f"{i},{_g(x)}\n")
    return 0


def _cmd_report(a, out):
    d = Path(a.out)
    d.mkdir(parents=True, exist_ok=True)
    reports = inequality_lab.run_suite(workers=a.workers)
    lines = ["claim,points_checked,violations,min_margin,pass"]
    for r in reports:
        (d / f"{r.claim}.json").write_text(r.to_json() + "\n", encoding="utf-8", newline="\n")
        mm = "" if r.min_margin is None else _g(r.min_margin)
        lines.append(f"{r.claim},{r.points_checked},{len(r.violations)},{mm},{str(r.passed).lower()}")
    body = "\n".join(lines) + "\n"
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    (d / "summary.csv").write_text(f"# generated {stamp}\n" + body, encoding="utf-8", newline="\n")
    out.write(body)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dinicross", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("eval", help="value or derivative of one function")
    s.add_argument("--fn", required=True, choices=TAGS)
    s.add_argument("--nu", required=True, type=float)
    s.add_argument("--x", required=True, type=float)
    s.add_argument("--deriv", type=int, choices=(1, 2), default=0)
    s.set_defaults(func=_cmd_eval)

    s = sub.add_parser("zeros", help="table of positive zeros")
    s.add_argument("--fn", required=True, choices=ZERO_FNS)
    s.add_argument("--nu", required=True, type=float)
    s.add_argument("--count", required=True, type=int)
    s.add_argument("--tol", type=float, default=zero_finder.DEFAULT_TOL)
    s.set_defaults(func=_cmd_zeros)

    s = sub.add_parser("rayleigh", help="Rayleigh sums of orders 1..M")
    s.add_argument("--family", required=True, choices=rayleigh.FAMILIES)
    s.add_argument("--nu", required=True, type=float)
    s.add_argument("--max-order", required=True, type=int)
    s.add_argument("--method", choices=rayleigh.METHODS, default="recursion")
    s.set_defaults(func=_cmd_rayleigh)

    s = sub.add_parser("bounds", help="Euler-Rayleigh bounds on the smallest zero")
    s.add_argument("--target", required=True, choices=("alpha1", "gamma1", "j1"))
    s.add_argument("--nu", required=True, type=float)
    s.add_argument("--order", required=True, type=int)
    s.set_defaults(func=_cmd_bounds)

    s = sub.add_parser("verify", help="check one claim and print its report")
    s.add_argument("--claim", required=True, choices=inequality_lab.CLAIM_IDS)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--nu", type=float)
    g.add_argument("--nu-grid", type=_floats)
    s.add_argument("--grid-frac", type=_floats)
    s.add_argument("--count", type=int)
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("figure1", help="x J'/J and x I'/I on a grid, as CSV")
    s.add_argument("--nu", required=True, type=float)
    s.add_argument("--xmax", required=True, type=float)
    s.add_argument("--step", required=True, type=float)
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_figure1)

    s = sub.add_parser("report", help="run every claim on its default grid")
    s.add_argument("--out", required=True)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=_cmd_report)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (DinicrossError, OSError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"dinicross {args.verb}: {type(e).__name__}: {msg}", file=sys.stderr)
        return 2


run = main

if __name__ == "__main__":
    sys.exit(main())
