"""Command-line front end.

Every subcommand writes one table, either CSV (header row, 17 significant
digits) or JSON (an object mapping column names to arrays). Exit status is
0 on success, 2 for invalid input and 3 for numerical failure.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import bvp, catalog, integral, nonlinear
from .basis import BasisFamily, Kind
from .errors import NumericalError, ValidationError
from .quadrature import default_rule

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _format_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _json_cell(v):
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return v if math.isfinite(v) else None


def render(columns, rows, fmt):
    if fmt == "json":
        data = {c: [_json_cell(r[i]) for r in rows] for i, c in enumerate(columns)}
        return json.dumps(data, indent=2) + "\n"
    lines = [",".join(columns)]
    lines += [",".join(_format_cell(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def _m_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def build_parser():
    parser = _Parser(prog="galerkin-lab",
                     description="Galerkin experiments: BVP, integral equations, nonlinear BVP.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default="-",
                        help="output file (default: standard output)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cond-table", parents=[common],
                       help="2-norm condition numbers of the bubble-monomial stiffness matrix")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--convention", choices=bvp.CONVENTIONS, default="shifted")

    p = sub.add_parser("bvp", parents=[common], help="Galerkin solve of -u'' = f")
    p.add_argument("--family", choices=("sine", "monomial"), default="sine")
    p.add_argument("--n", type=int, default=10)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--f", choices=sorted(catalog.FORCING), default="one")
    src.add_argument("--f-file", help="values of f at the quadrature nodes, one per line")
    p.add_argument("--dump-nodes", action="store_true",
                   help="print the quadrature nodes an --f-file must match, then exit")

    p = sub.add_parser("kernel", parents=[common], help="tabulate the truncated kernel K_N(x, t)")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--points", type=int, default=11, help="grid points per axis on [0, 1]")

    p = sub.add_parser("fredholm2", parents=[common],
                       help="second-kind equation with a trigonometric basis")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--lambda", dest="lam", type=float, default=2.0)
    p.add_argument("--kernel", choices=sorted(catalog.KERNELS), default="cos")
    p.add_argument("--f", choices=sorted(catalog.PERIODIC_RHS), default="expix")

    p = sub.add_parser("wing", parents=[common],
                       help="first-kind wing problem: naive solve versus truncated SVD")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--t1", type=float, default=1.0 / 3.0)
    p.add_argument("--t2", type=float, default=2.0 / 3.0)
    p.add_argument("--k", type=int, default=None,
                   help="TSVD truncation (default: best k against the exact solution)")
    p.add_argument("--vectors", action="store_true",
                   help="emit the generated vectors instead of the summary row")
    p.add_argument("--export-matrix", metavar="PATH",
                   help="also write A as plain text, one row per line")

    p = sub.add_parser("nonlinear", parents=[common],
                       help="-u'' - lambda u + u^3 = f by Galerkin + damped Newton")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--f", choices=sorted(catalog.FORCING) + ["manufactured"],
                   default="manufactured")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--m", type=int, help="single subspace dimension")
    grp.add_argument("--m-list", type=_m_list, default=[3, 5, 10],
                     help="comma-separated increasing dimensions (default 3,5,10)")
    p.add_argument("--tol", type=float, default=nonlinear.TOL)
    p.add_argument("--max-iters", type=int, default=nonlinear.MAX_ITERS)
    return parser


def _positive(name, value):
    if value < 1:
        raise ValidationError(f"--{name} must be >= 1, got {value}")


def cmd_cond_table(args):
    if args.n_min < 1 or args.n_min > args.n_max:
        raise ValidationError("need 1 <= --n-min <= --n-max")
    rows = bvp.condition_table(args.n_max, args.convention, args.n_min)
    return ["N", "cond2"], rows


def cmd_bvp(args):
    _positive("n", args.n)
    kind = Kind.SINE if args.family == "sine" else Kind.MONOMIAL_BUBBLE
    rule = default_rule(args.n)
    if args.dump_nodes:
        return ["x"], [(x,) for x in rule.nodes]
    if args.f_file:
        try:
            values = np.loadtxt(args.f_file, dtype=float, ndmin=1)
        except (OSError, ValueError) as exc:
            raise ValidationError(f"cannot read {args.f_file}: {exc}") from None
        f = catalog.NodalFunction(rule.nodes, values)
    else:
        f = catalog.forcing(args.f)
    c = bvp.solve_bvp(f, BasisFamily(kind, args.n), args.n, rule)
    return ["j", "xi"], list(zip(range(1, args.n + 1), c.xi))


def cmd_kernel(args):
    _positive("n", args.n)
    if args.points < 2:
        raise ValidationError("--points must be >= 2")
    grid = np.linspace(0.0, 1.0, args.points)
    rows = [(x, t, bvp.kernel_value(x, t, args.n)) for x in grid for t in grid]
    return ["x", "t", "K"], rows


def cmd_fredholm2(args):
    _positive("n", args.n)
    p = integral.SecondKindProblem(args.lam, catalog.KERNELS[args.kernel],
                                   catalog.PERIODIC_RHS[args.f], args.n)
    c = integral.solve_second_kind(p)
    rows = [(j, z.real, z.imag) for j, z in zip(range(-args.n, args.n + 1), c.xi)]
    return ["j", "re", "im"], rows


def cmd_wing(args):
    w = integral.WingProblem(args.n, args.t1, args.t2)
    if args.export_matrix:
        A, _, _ = integral.wing_generate(w)
        write_matrix(A, args.export_matrix)
    if args.vectors:
        _, b, x = integral.wing_generate(w)
        return ["i", "s", "b", "x_exact"], list(zip(range(1, w.n + 1), w.sti, b, x))
    r = integral.wing_solve_naive_vs_tsvd(w, args.k)
    if r.naive_failure:
        print(f"warning: naive solve failed: {r.naive_failure}", file=sys.stderr)
    return ["n", "cond2", "naive_err", "tsvd_k", "tsvd_err"], [
        (r.n, r.cond2, r.naive_err, r.tsvd_k, r.tsvd_err)]


def cmd_nonlinear(args):
    m_list = [args.m] if args.m is not None else args.m_list
    for m in m_list:
        _positive("m", m)
    p = nonlinear.NonlinearProblem(args.lam, catalog.forcing(args.f, args.lam), m_list[0])
    rows = nonlinear.convergence_study(p, m_list, args.tol, args.max_iters)
    columns = ["m", "norm_xi", "dist_to_finest", "newton_iters"]
    if args.format == "json":
        columns.append("residual_norm")
    return columns, [tuple(getattr(r, c) for c in columns) for r in rows]


def write_matrix(A, path):
    """Dense plain-text matrix: one row per line, space separated, 17 digits."""
    with open(path, "w") as fh:
        for row in np.atleast_2d(A):
            fh.write(" ".join(format(float(v), ".17g") for v in row) + "\n")


def read_matrix(path):
    return np.loadtxt(path, dtype=float, ndmin=2)


COMMANDS = {
    "cond-table": cmd_cond_table,
    "bvp": cmd_bvp,
    "kernel": cmd_kernel,
    "fredholm2": cmd_fredholm2,
    "wing": cmd_wing,
    "nonlinear": cmd_nonlinear,
}


def run(args):
    """Dispatch parsed arguments; returns the exit status."""
    try:
        columns, rows = COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = render(columns, rows, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_help(sys.stderr)
        return EXIT_INVALID
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
