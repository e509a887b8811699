"""Command-line front end.

Exit codes: 0 success, 1 domain error (or a failed verification), 2 usage
error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .cf_engine import convergents
from .constants import eform_decimal, piform_decimal
from .exact_arith import DomainError, format_rational, parse_rational, truncate_decimal
from .integral_engine import eval_exact
from .pi_analog import SEARCH_METHODS, lucas_search, pi_eval_exact
from .theorem_bridge import approx_e, bracket_e, verify_range

DEFAULT_DIGITS = 12
DEFAULT_MAX_NM = 10
DEFAULT_MAX_COEFF = 1000


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Emitter:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []

    def emit(self, text: str, obj: dict) -> None:
        self.lines.append(json.dumps(obj) if self.as_json else text)


def _cmd_eval(args, out: _Emitter) -> int:
    value = eval_exact((args.n, args.m))
    decimal = eform_decimal(value, args.digits)
    out.emit(
        f"I({args.n},{args.m}) = {value}\ndecimal: {decimal}",
        {
            "op": "eval",
            "inputs": {"n": args.n, "m": args.m},
            "e_coeff": str(value.e_coeff),
            "const_coeff": str(value.const_coeff),
            "decimal": decimal,
        },
    )
    return 0


def _cmd_convergents(args, out: _Emitter) -> int:
    rows = convergents(args.count)
    if not out.as_json:
        out.lines.append(f"{'k':>4}  {'p':>12}  {'q':>12}  decimal")
    for c in rows:
        out.emit(
            f"{c.index:>4}  {c.p:>12}  {c.q:>12}  {truncate_decimal(c.value, args.digits)}",
            {"k": c.index, "p": str(c.p), "q": str(c.q)},
        )
    return 0


def _cmd_verify(args, out: _Emitter) -> int:
    reports = verify_range(args.max_k)
    if not out.as_json:
        out.lines.append(f"{'k':>4}  {'variant':<6} holds")
    for r in reports:
        out.emit(
            f"{r.k:>4}  {r.variant.value:<6} {r.holds}",
            {"k": r.k, "variant": r.variant.value, "holds": r.holds},
        )
    failed = sum(not r.holds for r in reports)
    if not out.as_json:
        out.lines.append(f"{len(reports) - failed}/{len(reports)} identities hold")
    return 1 if failed else 0


def _cmd_bracket(args, out: _Emitter) -> int:
    interval = bracket_e(args.k)
    d = args.digits
    out.emit(
        f"lo: {format_rational(interval.lo)}  ({truncate_decimal(interval.lo, d)})\n"
        f"hi: {format_rational(interval.hi)}  ({truncate_decimal(interval.hi, d)})\n"
        f"width: {format_rational(interval.width)}  ({float(interval.width):.3e})",
        {
            "op": "bracket",
            "k": args.k,
            "lo": format_rational(interval.lo),
            "hi": format_rational(interval.hi),
            "width": format_rational(interval.width),
        },
    )
    return 0


def _cmd_approx(args, out: _Emitter) -> int:
    digits = args.approx_digits if args.approx_digits is not None else args.digits
    decimal, k, interval = approx_e(digits)
    out.emit(
        f"{decimal}\nwitness k: {k}",
        {
            "op": "approx",
            "digits": digits,
            "decimal": decimal,
            "witness_k": k,
            "lo": format_rational(interval.lo),
            "hi": format_rational(interval.hi),
        },
    )
    return 0


def _cmd_pi_eval(args, out: _Emitter) -> int:
    value = pi_eval_exact((args.n, args.m, args.a, args.b, args.c))
    decimal = piform_decimal(value, args.digits)
    out.emit(
        f"J({args.n},{args.m},{args.a},{args.b},{args.c}) = {value}\ndecimal: {decimal}",
        {
            "op": "pi eval",
            "inputs": {k: getattr(args, k) for k in "nmabc"},
            "r": format_rational(value.r),
            "s": format_rational(value.s),
            "t": format_rational(value.t),
            "decimal": decimal,
        },
    )
    return 0


def _cmd_pi_search(args, out: _Emitter) -> int:
    hits = lucas_search(
        args.target,
        args.max_nm,
        args.max_coeff,
        distinct=not args.all_forms,
        method=args.method,
        workers=args.workers,
    )
    for h in hits:
        p = h.params
        out.emit(
            f"n={p.n} m={p.m} a={p.a} b={p.b} c={p.c}  integral = {h.value}"
            f"  scale={format_rational(h.scale)} side={h.side.value}",
            {
                "n": p.n,
                "m": p.m,
                "a": p.a,
                "b": p.b,
                "c": p.c,
                "r": format_rational(h.value.r),
                "s": format_rational(h.value.s),
                "t": format_rational(h.value.t),
                "scale": format_rational(h.scale),
            },
        )
    if not out.as_json:
        out.lines.append(f"{len(hits)} hit(s)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand; the
    # subcommand copies default to SUPPRESS so they never clobber the former.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    with_digits = argparse.ArgumentParser(add_help=False, parents=[common])
    with_digits.add_argument("--digits", type=_positive_int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="cfintegrals",
        description="Exact integrals tied to the continued fraction of e, and pi-integrals.",
    )
    parser.add_argument("--json", action="store_true", help="one JSON object per result line")
    parser.add_argument("--out", metavar="PATH", help="also write the output to PATH")
    parser.add_argument(
        "--digits", type=_positive_int, default=DEFAULT_DIGITS,
        help=f"fractional digits of rendered decimals (default {DEFAULT_DIGITS})",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("eval", parents=[with_digits], help="exact I(n, m) and its decimal value")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("convergents", parents=[with_digits], help="convergents of e")
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=_cmd_convergents)

    p = sub.add_parser("verify", parents=[with_digits], help="check the integral/convergent identities")
    p.add_argument("--max-k", type=_positive_int, required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bracket", parents=[with_digits], help="certified rational bracket of e")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("approx", parents=[common], help="certified decimal digits of e")
    p.add_argument("--digits", dest="approx_digits", type=_positive_int, default=None)
    p.set_defaults(func=_cmd_approx)

    pi = sub.add_parser("pi", help="integrals x^n (1-x)^m (a + b x + c x^2) / (1 + x^2)")
    pi_sub = pi.add_subparsers(dest="pi_command", metavar="COMMAND", required=True)

    p = pi_sub.add_parser("eval", parents=[with_digits], help="exact r + s*pi + t*ln2 value")
    for name in "nmabc":
        p.add_argument(name, type=int)
    p.set_defaults(func=_cmd_pi_eval)

    p = pi_sub.add_parser("search", parents=[with_digits], help="parameters approximating pi by a target")
    p.add_argument("--target", type=_rational, required=True, metavar="P/Q")
    p.add_argument("--max-nm", type=int, default=DEFAULT_MAX_NM)
    p.add_argument("--max-coeff", type=int, default=DEFAULT_MAX_COEFF)
    p.add_argument("--all-forms", action="store_true",
                   help="report every parameter tuple, not one per distinct integrand")
    p.add_argument("--method", choices=SEARCH_METHODS, default="lattice")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=_cmd_pi_search)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    out = _Emitter(args.json)
    handler: Callable = args.func
    try:
        code = handler(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return 1

    text = "\n".join(out.lines) + ("\n" if out.lines else "")
    stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


def main() -> None:
    sys.exit(run())
