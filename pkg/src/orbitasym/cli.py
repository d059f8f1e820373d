"""Command-line entry point: ``orbitasym <subcommand> [flags]``.

Output is JSON by default (``--format csv`` for tabular results).  Exact
integers and rationals are written as strings, floats in shortest round-trip
form.  Every flag can also be set through an ``ORBITASYM_<FLAG>`` environment
variable, e.g. ``ORBITASYM_FORMAT=csv``; command-line values win.

Exit status: 0 on success, 1 on invalid input, 2 when an internal consistency
check fails (for example a non-integral count).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import constants as cst
from . import enumeration as en
from . import logconcavity as lc
from . import saddle as sd
from . import zfunctions as zf
from .special import MP, named_values


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------

def plain(x):
    """Convert results into JSON-ready values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return x
    if isinstance(x, MP.mpf) or type(x).__name__ == "mpf":
        return float(x)
    if hasattr(x, "item") and not isinstance(x, (list, tuple, dict)):
        return plain(x.item())
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _csv_cell(v):
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def render(payload, fmt: str, rows=None) -> str:
    if fmt == "json":
        return json.dumps(plain(payload), indent=1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows is None:
        flat = plain(payload)
        if isinstance(flat, dict):
            rows = [{"key": k, "value": json.dumps(v) if isinstance(v, (list, dict)) else v}
                    for k, v in flat.items()]
        else:
            rows = flat
    else:
        rows = plain(rows)
    if not rows:
        return ""
    header = list(rows[0].keys())
    w.writerow(header)
    for r in rows:
        w.writerow([_csv_cell(r.get(h)) for h in header])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument types
# ---------------------------------------------------------------------------

def _positive_int(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s}")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {s}")
    return v


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {s}")


def _alphas(s: str) -> list:
    s = s.strip()
    if not s:
        return []
    return [_fraction(x) for x in s.split(",")]


GLOBAL_FLAGS = {
    "format": ("json", str),
    "eps": (1e-12, _positive_float),
    "threads": (1, _positive_int),
}


def _env_default(name: str, default, conv):
    raw = os.environ.get(f"ORBITASYM_{name.upper().replace('-', '_')}")
    if raw is None:
        return default
    try:
        return conv(raw)
    except (ValueError, argparse.ArgumentTypeError) as err:
        raise UsageError(f"bad ORBITASYM_{name.upper()}={raw!r}: {err}")


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--eps", type=_positive_float, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS)

    p = Parser(prog="orbitasym", parents=[common],
               description="Counts and asymptotics of commuting permutation tuples by joint orbits.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    c = add("count", "exact table A(ell, n, k) for 0 <= k <= n <= max-n")
    c.add_argument("--ell", type=_positive_int, required=True)
    c.add_argument("--max-n", type=_nonneg_int, required=True)

    b = add("brute", "row n by direct enumeration of commuting tuples")
    b.add_argument("--ell", type=_positive_int, required=True)
    b.add_argument("--n", type=_nonneg_int, required=True)

    z = add("zeval", "direct value of Z^[ell]_alphas(t)")
    z.add_argument("--ell", type=_nonneg_int, required=True)
    z.add_argument("--alphas", type=_alphas, default=[], help="comma-separated exponents")
    z.add_argument("--t", type=_positive_float, required=True)

    e = add("zexpand", "small-t expansion of the staircase Z_m^[ell] up to t**order")
    e.add_argument("--ell", type=_positive_int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--order", type=_fraction, default=Fraction(10))

    k = add("constants", "constants of the correction polynomial, or named special values")
    k.add_argument("--ell", type=int)
    k.add_argument("--order", type=_positive_int, default=None)
    k.add_argument("--special", action="store_true")

    s = add("estimate", "asymptotic estimate of ln(A / (n-1)!)")
    for flag in ("--ell", "--n", "--k"):
        s.add_argument(flag, type=_positive_int, required=True)
    s.add_argument("--exact", action="store_true", help="also compute the exact value")

    v = add("validate-saddle", "check A / n! = M * I by torus quadrature")
    for flag in ("--ell", "--n", "--k"):
        v.add_argument(flag, type=_positive_int, required=True)
    v.add_argument("--grid", type=_positive_int, default=64)

    g = add("logconcavity", "second differences of ln A(ell, n, k) in k")
    g.add_argument("--ell", type=_positive_int, required=True)
    g.add_argument("--n", type=_positive_int, required=True)
    which = g.add_mutually_exclusive_group()
    which.add_argument("--all-k", action="store_true")
    which.add_argument("--k", type=_positive_int)
    return p


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_count(a):
    table = en.count_table(a.ell, a.max_n)
    recs = list(table.records())
    return recs, recs


def cmd_brute(a):
    table = en.brute_force_table(a.ell, a.n, threads=a.threads)
    recs = list(table.records())
    return recs, recs


def cmd_zeval(a):
    spec = zf.ZSpec(a.ell, a.alphas)
    value, used = zf.z_sum(spec, a.t, a.eps)
    return {"ell": a.ell, "alphas": [str(x) for x in spec.alphas], "t": a.t,
            "eps": a.eps, "value": value, "terms_used": used}, None


def cmd_zexpand(a):
    exp = zf.staircase_expansion(a.ell, a.m, a.order)
    terms = [{"a": str(x), "b": y, "coeff": float(c)} for x, y, c in exp]
    return terms, terms


def cmd_constants(a):
    if a.special:
        return named_values(), None
    if a.ell is None:
        raise UsageError("constants: give --ell or --special")
    if a.ell < 2:
        raise UsageError("constants: --ell must be >= 2")
    if a.ell > 10:
        raise UsageError("constants: --ell above 10 is not supported")
    order = a.order if a.order is not None else (10 if a.ell >= 4 else None)
    bundle = cst.constants_bundle(a.ell, order)
    out = {"ell": bundle.ell, "kind": bundle.kind, "values": bundle.values}
    if bundle.intermediates:
        out["intermediates"] = bundle.intermediates
    poly = cst.correction_poly(a.ell)
    out["correction"] = [{"power": p, "log_power": q, "coeff": c} for p, q, c in poly.terms]
    return out, None


def cmd_estimate(a):
    r = sd.estimate(a.ell, a.n, a.k, exact=a.exact)
    out = {
        "ell": r.ell, "n": r.n, "k": r.k,
        "starr": r.starr, "correction": r.correction,
        "prefactor_log": r.prefactor_log,
        "estimate_log": r.estimate_log, "saddle_log": r.saddle_log,
    }
    if r.exact_log is not None:
        out["exact_log"] = r.exact_log
        out["log_difference"] = r.log_error
    return out, None


def cmd_validate_saddle(a):
    if a.grid < 16:
        raise UsageError("validate-saddle: --grid must be >= 16")
    chk = sd.validate_saddle(a.ell, a.n, a.k, grid=a.grid)
    return {"ell": a.ell, "n": a.n, "k": a.k, "integral": chk.integral, "grid": chk.grid,
            "log_lhs": chk.log_lhs, "log_rhs": chk.log_rhs,
            "identity_residual": chk.residual}, None


def cmd_logconcavity(a):
    table = en.count_table(a.ell, a.n)
    if a.k is not None:
        ks = [a.k]
    elif a.all_k:
        ks = range(2, a.n)
    else:
        ks = [lc.typical_k(a.ell, a.n, 1.0)] if a.ell >= 2 else range(2, a.n)
    rep = lc.scan(table, a.n, ks)
    out = {"ell": rep.ell, "n": rep.n, "checked_k": rep.checked_k,
           "violations": rep.violations, "upsilon": rep.upsilon}
    rows = [{"k": k, "upsilon": rep.upsilon[k], "log_concave": k not in rep.violations}
            for k in rep.checked_k]
    return out, rows


COMMANDS = {
    "count": cmd_count,
    "brute": cmd_brute,
    "zeval": cmd_zeval,
    "zexpand": cmd_zexpand,
    "constants": cmd_constants,
    "estimate": cmd_estimate,
    "validate-saddle": cmd_validate_saddle,
    "logconcavity": cmd_logconcavity,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name, (default, conv) in GLOBAL_FLAGS.items():
            if not hasattr(args, name):
                setattr(args, name, _env_default(name, default, conv))
        if args.format not in ("json", "csv"):
            raise UsageError(f"unknown format {args.format!r}")
        if args.command is None:
            err.write(parser.format_usage())
            return 1
        payload, rows = COMMANDS[args.command](args)
    except UsageError as e:
        if "invalid choice" in str(e):
            err.write(parser.format_usage())
        err.write(f"{e}\n")
        return 1
    except en.IntegralityError as e:
        err.write(f"consistency failure: {e}\n")
        return 2
    except sd.QuadratureError as e:
        err.write(f"consistency failure: {e}; last values {e.last_values}\n")
        return 2
    except ValueError as e:
        err.write(f"invalid input: {e}\n")
        return 1
    except ArithmeticError as e:
        err.write(f"consistency failure: {e}\n")
        return 2
    text = render(payload, args.format, rows)
    out.write(text if text.endswith("\n") or not text else text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
