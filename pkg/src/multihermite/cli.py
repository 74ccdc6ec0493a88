"""Command line front end: deterministic CSV/JSON for polynomials, zeros, rules and asymptotics."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import mpmath
from mpmath import mp, mpf

from . import __version__
from .numerics import DEFAULT_PRECISION, MIN_PRECISION, set_precision, to_decimal

PRECISION_ENV = "MULTIHERMITE_PRECISION"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class Table:
    """Header, rows of cells and a JSON-side meta block."""

    def __init__(self, header, rows, meta, extra=None):
        self.header = list(header)
        self.rows = rows
        self.meta = meta
        self.extra = extra or {}


def _num(value) -> str | None:
    if value is None:
        return None
    if isinstance(value, (int, str)):
        return str(value)
    return to_decimal(value, mp.dps)


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _num_list(text: str) -> list:
    try:
        return [mpf(v) for v in text.split(",")]
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _number(text: str):
    try:
        return mpf(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _env_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        return -1  # rejected during validation


def _meta(args, **fields) -> dict:
    meta = {"command": args.command}
    meta.update({k: v for k, v in fields.items()})
    meta["P"] = str(mp.dps)
    meta["version"] = __version__
    return meta


def _symmetric(args, n: int):
    """WeightSystem for the symmetric triple, resolving --chat into c = chat * sqrt(n)."""
    from .mhermite import WeightSystem

    if args.chat is not None:
        c = args.chat * mpmath.sqrt(n)
    else:
        c = args.c
    return WeightSystem.symmetric(c, n)


# subcommands


def cmd_poly(args) -> Table:
    from .mhermite import MultiIndex, WeightSystem, build_by_recurrence, build_explicit
    from .numerics import relative_coeff_diff

    n = MultiIndex(tuple(args.n))
    if len(args.c) == 1 and n.r == 3:
        w = WeightSystem.symmetric(args.c[0])
    else:
        w = WeightSystem(tuple(args.c))
    rec = build_by_recurrence(n, w).coeffs
    exp = build_explicit(n, w).coeffs
    rows = [[d, _num(a), _num(b), _num(abs(a - b))] for d, (a, b) in enumerate(zip(rec, exp))]
    meta = _meta(
        args,
        n=list(n.parts),
        c=[_num(v) for v in w.c],
        max_relative_discrepancy=_num(relative_coeff_diff(rec, exp)),
    )
    return Table(["degree", "recurrence", "explicit", "abs_diff"], rows, meta)


def cmd_zeros(args) -> Table:
    from .mhermite import MultiIndex
    from .zeros import bounding_intervals, multiple_hermite_zeros, zero_interval_counts

    w = _symmetric(args, args.n)
    zs = multiple_hermite_zeros(MultiIndex.diagonal(args.n), w)
    L = bounding_intervals(args.n, w.c[2])
    rows = []
    for k, z in enumerate(zs, start=1):
        label = next((i for i, (a, b) in enumerate(L, start=1) if a <= z <= b), 0)
        rows.append([k, _num(z), label])
    counts = zero_interval_counts(zs, L)
    meta = _meta(args, n=args.n, c=_num(w.c[2]), chat=_num(w.chat))
    extra = {
        "intervals": [[_num(a), _num(b)] for a, b in L],
        "disjoint": L.disjoint,
        "counts": {"I1": counts[0], "I2": counts[1], "I3": counts[2], "outside": counts[3]},
    }
    return Table(["k", "zero", "interval"], rows, meta, extra)


def cmd_rule(args) -> Table:
    from .quadrature import build_rule, sign_pattern_check

    w = _symmetric(args, args.n)
    rule = build_rule(args.n, w, normalized=not args.raw)
    rows = [
        [k + 1, _num(x)] + [_num(col[k]) for col in rule.weights]
        for k, x in enumerate(rule.nodes)
    ]
    signs = sign_pattern_check(rule)
    meta = _meta(
        args,
        n=args.n,
        c=_num(w.c[2]),
        chat=_num(w.chat),
        normalization="raw" if args.raw else "normalized",
    )
    extra = {"sign_patterns": {str(j): rep for j, rep in signs.items()}}
    header = ["k", "node"] + [f"lambda_{j}" for j in range(1, rule.r + 1)]
    return Table(header, rows, meta, extra)


def cmd_density(args) -> Table:
    from .asymptotics.densities import density_grid
    from .asymptotics.support import ONE, critical_c, support_intervals

    if args.chat <= 0:
        raise _UsageError("--chat must be positive")
    model = support_intervals(args.chat)
    nus_defined = model.phase != ONE
    rows = []
    for s in density_grid(args.chat, args.samples):
        nus = [_num(s.nu1), _num(s.nu2), _num(s.nu3)] if nus_defined else [None, None, None]
        rows.append([_num(s.x), _num(s.v)] + nus)
    meta = _meta(args, chat=_num(args.chat))
    extra = {
        "phase": model.phase,
        "d": _num(model.d),
        "a": _num(model.a),
        "b": _num(model.b),
        "c_star": _num(critical_c()),
    }
    return Table(["x", "v", "nu1", "nu2", "nu3"], rows, meta, extra)


def cmd_transition(args) -> Table:
    from .asymptotics.support import critical_c

    value = mpmath.nstr(critical_c(), 20, min_fixed=-1, max_fixed=2)
    return Table(["c_star"], [[value]], _meta(args))


def cmd_potentials(args) -> Table:
    from .asymptotics.potential import discrete_potential, equilibrium_model
    from .asymptotics.support import support_intervals
    from .mhermite import MultiIndex
    from .zeros import multiple_hermite_zeros

    if args.chat <= 0:
        raise _UsageError("--chat must be positive")
    n = args.n
    model = equilibrium_model(args.chat, args.density_samples)
    support = support_intervals(args.chat)
    w = _symmetric(args, n)
    zeros = sorted(multiple_hermite_zeros(MultiIndex.diagonal(n), w).zeros)
    groups = [zeros[:n], zeros[n : 2 * n], zeros[2 * n :]]
    span = support.b + 1
    rows = []
    for i in range(args.samples):
        x = -span + 2 * span * mpf(i) / (args.samples - 1)
        u = model.potentials(x)
        discrete = []
        for g in groups:
            try:
                discrete.append(_num(discrete_potential(g, n, x)))
            except ValueError:
                discrete.append(None)
        rows.append([_num(x)] + [_num(v) for v in u] + discrete + [_num(e) for e in model.combinations(x)])
    meta = _meta(args, n=n, c=_num(w.c[2]), chat=_num(args.chat))
    extra = {"ell": [_num(e) for e in model.ell()], "phase": support.phase}
    header = ["x", "U1", "U2", "U3", "U1_n", "U2_n", "U3_n", "E1", "E2", "E3"]
    return Table(header, rows, meta, extra)


def cmd_check(args) -> Table:
    from .acceptance import run_suite

    results = run_suite(args.suite)
    rows = [[r.number, r.title, "pass" if r.passed else "fail", r.detail] for r in results]
    meta = _meta(args, suite=args.suite)
    extra = {"passed": all(r.passed for r in results)}
    return Table(["criterion", "title", "status", "detail"], rows, meta, extra)


COMMANDS = {
    "poly": cmd_poly,
    "zeros": cmd_zeros,
    "rule": cmd_rule,
    "density": cmd_density,
    "transition": cmd_transition,
    "potentials": cmd_potentials,
    "check": cmd_check,
}


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--precision", type=int, default=None,
        help=f"working precision in decimal digits (default ${PRECISION_ENV} or {DEFAULT_PRECISION})",
    )
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default="-", help="output path, '-' for standard output")

    parser = argparse.ArgumentParser(prog="multihermite", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="coefficients of H_n by both constructions")
    p.add_argument("--n", type=_int_list, required=True, help="multi-index n1,n2,...")
    p.add_argument("--c", type=_num_list, required=True, help="shifts c1,c2,... (one value: symmetric triple)")

    for name, text in (("zeros", "zeros of H_{n,n,n} and interval counts"),
                       ("rule", "simultaneous Gaussian quadrature rule")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--n", type=_positive_int, required=True)
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--c", type=_number, help="shift c of the triple (-c, 0, c)")
        g.add_argument("--chat", type=_number, help="scaled shift; c = chat * sqrt(n)")
        if name == "rule":
            p.add_argument("--raw", action="store_true", help="raw weights instead of normalized")

    p = sub.add_parser("density", parents=[common], help="limiting densities on a grid")
    p.add_argument("--chat", type=_number, required=True)
    p.add_argument("--samples", type=_positive_int, default=101)

    sub.add_parser("transition", parents=[common], help="critical scaled shift c*")

    p = sub.add_parser("potentials", parents=[common], help="potentials and variational combinations")
    p.add_argument("--chat", type=_number, required=True)
    p.add_argument("--n", type=_positive_int, required=True, help="degree index for the discrete potentials")
    p.add_argument("--samples", type=_positive_int, default=101)
    p.add_argument("--density-samples", type=_positive_int, default=96)
    p.set_defaults(c=None)

    p = sub.add_parser("check", parents=[common], help="run acceptance suites")
    p.add_argument("--suite", choices=("identities", "table1", "asymptotics", "all"), default="all")
    return parser


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow(["" if cell is None else cell for cell in row])
        return buf.getvalue()
    doc = {"meta": table.meta}
    doc.update(table.extra)
    doc["columns"] = table.header
    doc["rows"] = table.rows
    return json.dumps(doc, indent=2) + "\n"


def write_output(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = os.path.abspath(out)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    digits = args.precision if args.precision is not None else _env_precision()
    if digits < MIN_PRECISION:
        parser.error(f"precision must be at least {MIN_PRECISION} digits")
    if getattr(args, "samples", 2) < 2:
        parser.error("--samples must be at least 2")

    from .asymptotics.curves import TrackingFailure
    from .zeros import IsolationFailure

    with mp.workdps(digits):
        set_precision(digits)
        try:
            table = COMMANDS[args.command](args)
        except _UsageError as exc:
            parser.error(str(exc))
        except (IsolationFailure, TrackingFailure, ArithmeticError, ZeroDivisionError) as exc:
            print(f"multihermite: numeric failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        except ValueError as exc:
            parser.error(str(exc))
        text = render(table, args.format)
    try:
        write_output(text, args.out)
    except OSError as exc:
        print(f"multihermite: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "check" and not table.extra["passed"]:
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
