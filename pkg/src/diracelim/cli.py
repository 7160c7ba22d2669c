"""Command line front door.

Four subcommands: `verify` runs the identity suite on a scenario and emits a
report, `reduce` prints the elimination pipeline at one point, `realify`
prints the phase-removal summary at one point, and `scenarios` lists the
built-ins.

Exit codes: 0 all checks passed, 1 an identity or domain check failed
(including degenerate fields and a vanishing phase reference), 2 usage or
configuration trouble (unknown scenario, malformed expression, point outside
the region, bad flag values).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, dirac, expressions, fdcheck, fields, realform, reduction, scenarios, suite
from .errors import (
    ConstraintInfeasibleError,
    ContractViolationError,
    DegenerateFieldError,
    ExpressionError,
    ScenarioError,
    SingularityError,
)
from .report import write_csv


def _point_type(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"expected a point as t,x,y,z with four entries, got {text!r}"
        )
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"point entries must be numbers: {text!r}") from None


def _order_type(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}") from None
    if not suite.MIN_ORDER <= value <= suite.MAX_ORDER:
        raise argparse.ArgumentTypeError(
            f"order must be in {suite.MIN_ORDER}..{suite.MAX_ORDER}, got {value}"
        )
    return value


def _count_type(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive count, got {value}")
    return value


def _cfmt(z):
    """Compact complex formatting for the printed pipelines."""
    z = complex(z)
    return f"{z.real + 0.0:.12g}{z.imag + 0.0:+.12g}i"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="diracelim",
        description="verify the reduction of the four-component Dirac equation "
        "to a single fourth-order equation as numerical jet identities",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the identity suite on a scenario")
    v.add_argument("scenario", nargs="?", help="builtin name, name under the scenario directory, or TOML path")
    v.add_argument("--random", type=int, metavar="SEED", default=None,
                   help="verify a generated random admissible field instead of a named scenario")
    v.add_argument("--points", type=_count_type, default=100, help="sample points per identity (default 100)")
    v.add_argument("--order", type=_order_type, default=6, help="jet truncation order (default 6)")
    v.add_argument("--tolerance", type=float, default=1e-10,
                   help="shared relative tolerance for the non-fixed identities (default 1e-10)")
    v.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    v.add_argument("--fd-points", type=int, default=2, metavar="K",
                   help="points that also get the finite-difference cross-check (default 2)")
    v.add_argument("--report", metavar="PATH", help="write the JSON report to PATH")
    v.add_argument("--csv", metavar="PATH", help="write per-point residual rows to PATH")
    v.add_argument("--json", action="store_true", help="print the JSON report instead of the summary")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="print the elimination pipeline at a point")
    r.add_argument("scenario")
    r.add_argument("--psi1", metavar="EXPR", help="first component (defaults to the scenario's psi1)")
    r.add_argument("--point", type=_point_type, required=True, metavar="T,X,Y,Z")
    r.add_argument("--order", type=_order_type, default=6)
    r.set_defaults(func=cmd_reduce)

    w = sub.add_parser("realify", help="print the phase-removal summary at a point")
    w.add_argument("scenario")
    w.add_argument("--psi1", metavar="EXPR", help="first component (defaults to the scenario's psi1)")
    w.add_argument("--point", type=_point_type, required=True, metavar="T,X,Y,Z")
    w.add_argument("--order", type=_order_type, default=6)
    w.set_defaults(func=cmd_realify)

    ls = sub.add_parser("scenarios", help="list the builtin scenarios")
    ls.set_defaults(func=cmd_scenarios)
    return parser


def _resolve_psi1(args, scenario):
    if args.psi1 is not None:
        return expressions.parse(args.psi1)
    if scenario.psi1 is not None:
        return scenario.psi1
    raise ScenarioError(
        f"scenario {scenario.name!r} has no psi1; pass one with --psi1"
    )


def cmd_verify(args):
    if args.random is not None and args.scenario is not None:
        raise ScenarioError("give a scenario or --random, not both")
    if args.random is None and args.scenario is None:
        raise ScenarioError("give a scenario name or --random SEED")
    if args.random is not None:
        scenario = fdcheck.random_scenario(fdcheck.RandomFieldSpec(seed=args.random))
    else:
        scenario = scenarios.find_scenario(args.scenario)

    report, rows = suite.run_suite(
        scenario,
        points=args.points,
        order=args.order,
        tolerance=args.tolerance,
        seed=args.seed,
        fd_points=args.fd_points,
        collect_points=args.csv is not None,
    )

    if args.json:
        sys.stdout.write(report.to_json())
    else:
        print(f"scenario {report.scenario}  order {report.order}  "
              f"points {report.points}  seed {report.seed}")
        for rec in report.identities:
            status = "ok  " if rec.passed else "FAIL"
            line = (f"{status} {rec.identity:32s} max {rec.max_residual:.3e}  "
                    f"tol {rec.tolerance:.0e}  pts {rec.points}")
            if rec.note:
                line += f"  ({rec.note})"
            print(line)
        print(f"overall: {'pass' if report.overall_pass else 'FAIL'}  "
              f"({report.wall_time_s:.2f}s)")

    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if args.csv:
        write_csv(args.csv, rows)
    return 0 if report.overall_pass else 1


def cmd_reduce(args):
    scenario = scenarios.find_scenario(args.scenario)
    expr = _resolve_psi1(args, scenario)
    n = args.order
    p = fields.potential_at(scenario, args.point, n)
    psi1 = expressions.eval_jet(expr, args.point, n)

    psi2 = reduction.solve_psi2(psi1, p)
    full = reduction.spinor_from_psi1(psi1, p)
    delta = reduction.second_order_residuals(psi1.truncated(n - 2), psi2, p).rho2
    l4 = reduction.fourth_order_residual(psi1, p)
    div = dirac.current_divergence(full)
    split = realform.conservation_split(full, p, delta=delta)

    print(f"scenario {scenario.name}  point {args.point}  order {n}")
    print(f"psi1          {_cfmt(psi1.value()):28s} {expressions.to_text(expr)}")
    print(f"psi2          {_cfmt(psi2.value()):28s} -(i*F1+F2)^-1 (box'+i*F3) psi1")
    print(f"psi3          {_cfmt(full.component(3).value()):28s} first-order reconstruction from (psi1, psi2)")
    print(f"psi4          {_cfmt(full.component(4).value()):28s} first-order reconstruction from (psi1, psi2)")
    print(f"delta         {_cfmt(delta.value()):28s} second-order residual of (psi1, solved psi2)")
    print(f"L4 psi1       {_cfmt(l4.value()):28s} ((box'-i*F3)(i*F1+F2)^-1(box'+i*F3) - i*F1 + F2) psi1")
    print(f"div j         {_cfmt(div.value()):28s} derivative contraction of the spinor current")
    print(f"real part     {_cfmt(split.real_eq.value()):28s} 2 Re(psi4* delta)")
    print(f"conservation  {_cfmt(split.conservation.value()):28s} 2 Im(-psi4* delta)")
    if split.psi4_below_floor:
        print(f"note: |psi4| < {realform.PSI4_FLOOR:g} at this point; "
              "the split carries no |delta|^2 information here")
    return 0


def cmd_realify(args):
    scenario = scenarios.find_scenario(args.scenario)
    expr = _resolve_psi1(args, scenario)
    n = args.order
    p = fields.potential_at(scenario, args.point, n)
    psi1 = expressions.eval_jet(expr, args.point, n)

    mr = realform.make_real(psi1, p)
    rel_imag = mr.psi1_real.imag_part().max_abs() / max(mr.psi1_real.max_abs(), 1.0)
    print(f"scenario {scenario.name}  point {args.point}  order {n}")
    print(f"psi1            {_cfmt(psi1.value()):28s} {expressions.to_text(expr)}")
    print(f"alpha           {_cfmt(mr.alpha.value()):28s} local phase of psi1")
    for mu in range(4):
        print(f"B{mu}              {_cfmt(mr.b.upper(mu).value()):28s} A{mu} + d{mu} alpha (upper index)")
    print(f"psi1 realified  {_cfmt(mr.psi1_real.value()):28s} exp(-i*alpha) psi1")
    print(f"max |Im| coefficient of realified psi1 (relative): {rel_imag:.3e}")
    try:
        l4a = reduction.fourth_order_residual(psi1, p)
        l4b = reduction.fourth_order_residual(mr.psi1_real, mr.b)
        drift = abs(abs(l4b.value()) - abs(l4a.value()))
        print(f"|L4 psi1| before {abs(l4a.value()):.12g}  after {abs(l4b.value()):.12g}  "
              f"drift {drift:.3e}")
    except DegenerateFieldError as exc:
        print(f"fourth-order check skipped: {exc}")
    return 0


def cmd_scenarios(args):
    for scenario in scenarios.builtin_scenarios().values():
        pots = "  ".join(f"A{mu}={scenario.potential_text[mu]}" for mu in range(4))
        line = f"{scenario.name:12s} {pots}"
        if scenario.psi1_text is not None:
            line += f"  psi1={scenario.psi1_text}"
        print(line)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ExpressionError, ConstraintInfeasibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateFieldError, SingularityError, ContractViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
