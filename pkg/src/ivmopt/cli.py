"""Command-line interface.

Subcommands:
  solve     run one variant on one problem from a seeded random start
  bench     run a (problems x variants x starts) grid and write records CSV
  profile   turn a records CSV into performance-profile CSV (and SVG)
  problems  list shipped problems or emit their markdown datasheets
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench, problems
from .ivf import eval_objective
from .linesearch import WolfeParams
from .ncg import VariantConfig, solve, trace_to_csv
from .subproblem import KERNEL_NAME

VARIANTS = ("sd", "prp", "hs", "ls")


def _add_solver_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", type=float, default=1e-6,
                        help="criticality tolerance (default 1e-6)")
    parser.add_argument("--rho", type=float, default=0.001,
                        help="sufficient-decrease fraction (default 0.001)")
    parser.add_argument("--sigma", type=float, default=0.1,
                        help="curvature fraction (default 0.1)")
    parser.add_argument("--c", type=float, default=0.1,
                        help="sufficient-descent constant (default 0.1)")
    parser.add_argument("--max-iters", type=int, default=50000,
                        help="iteration cap (default 50000)")


def _config(args, variant: str) -> VariantConfig:
    return VariantConfig(beta_kind=variant, c=args.c, eps=args.eps,
                         max_iters=args.max_iters,
                         wolfe=WolfeParams(rho=args.rho, sigma=args.sigma))


def _parse_problems(value: str) -> list[problems.ProblemSpec]:
    if value == "all":
        return list(problems.registry())
    if value == "convex":
        return [s for s in problems.registry() if s.is_convex]
    return [problems.lookup(name.strip()) for name in value.split(",") if name.strip()]


def _parse_variants(value: str) -> list[str]:
    names = VARIANTS if value == "all" else tuple(v.strip() for v in value.split(","))
    for name in names:
        if name not in VARIANTS:
            raise SystemExit(f"unknown variant {name!r}; choose from {', '.join(VARIANTS)}")
    return list(names)


def _cmd_solve(args) -> int:
    spec = problems.lookup(args.problem)
    x0 = problems.sample_start(spec, args.seed)
    trace = solve(spec.ivmop, x0, _config(args, args.variant))
    final = trace.states[-1] if trace.states else None
    print(f"problem      {spec.name}")
    print(f"variant      {args.variant}")
    print(f"qp kernel    {KERNEL_NAME}")
    print(f"start seed   {args.seed}")
    print(f"status       {trace.status.value}")
    print(f"iterations   {trace.iterations}")
    print(f"wall time    {trace.wall_time:.6f} s")
    if final is not None:
        print(f"final xi     {final.xi:.6e}")
        print(f"final point  {np.array2string(final.x, precision=8)}")
        for i, obj in enumerate(spec.ivmop.objectives):
            print(f"objective {i}  {eval_objective(obj, final.x)}")
    if args.trace:
        trace_to_csv(trace, args.trace)
        print(f"trace        {args.trace}")
    return 0 if trace.status.value == "critical" else 1


def _cmd_bench(args) -> int:
    specs = _parse_problems(args.problems)
    variants = _parse_variants(args.variants)
    cfg = _config(args, variants[0])
    records = bench.run_grid(specs, variants, args.starts, args.seed, cfg)
    bench.write_records_csv(records, args.out)
    n_ok = sum(1 for r in records if r.status.value == "critical")
    print(f"{len(records)} runs ({n_ok} critical) -> {args.out}")
    return 0


def _cmd_profile(args) -> int:
    records = bench.read_records_csv(args.infile)
    metric = "iterations" if args.metric == "iters" else args.metric
    curves = bench.performance_profile(records, metric)
    bench.write_profile_csv(curves, args.out)
    print(f"{len(curves)} curves -> {args.out}")
    if args.svg:
        bench.write_profile_svg(curves, args.svg)
        print(f"plot -> {args.svg}")
    return 0


def _cmd_problems(args) -> int:
    if args.action == "list":
        for spec in problems.registry():
            iv = spec.ivmop
            print(f"{spec.name:18s} n={iv.n:<3d} m={iv.m}  {spec.family.value}")
        return 0
    # doc
    sheets = [problems.datasheet_markdown(spec) for spec in problems.registry()]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for spec, sheet in zip(problems.registry(), sheets):
            path = os.path.join(args.out, f"{spec.name}.md")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(sheet)
        print(f"{len(sheets)} datasheets -> {args.out}")
    else:
        print("# Shipped problems\n")
        print("\n".join(sheets))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ivmopt",
        description="Conjugate-gradient solvers for interval-valued "
                    "multiobjective problems")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one problem instance")
    p_solve.add_argument("--problem", required=True)
    p_solve.add_argument("--variant", choices=VARIANTS, default="prp")
    p_solve.add_argument("--seed", type=int, required=True,
                         help="seed for the random start point")
    p_solve.add_argument("--trace", help="write per-iteration CSV here")
    _add_solver_options(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_bench = sub.add_parser("bench", help="run a benchmark grid")
    p_bench.add_argument("--problems", default="all",
                         help="comma list, 'all', or 'convex'")
    p_bench.add_argument("--variants", default="all",
                         help="comma list from sd,prp,hs,ls or 'all'")
    p_bench.add_argument("--starts", type=int, default=100)
    p_bench.add_argument("--seed", type=int, default=0, help="base seed")
    p_bench.add_argument("--out", required=True, help="records CSV path")
    _add_solver_options(p_bench)
    p_bench.set_defaults(func=_cmd_bench)

    p_prof = sub.add_parser("profile", help="performance profiles from records")
    p_prof.add_argument("--in", dest="infile", required=True)
    p_prof.add_argument("--metric", choices=("iters", "time"), default="iters")
    p_prof.add_argument("--out", required=True, help="profile CSV path")
    p_prof.add_argument("--svg", help="optional SVG plot path")
    p_prof.set_defaults(func=_cmd_profile)

    p_probs = sub.add_parser("problems", help="inspect shipped problems")
    p_probs.add_argument("action", choices=("list", "doc"))
    p_probs.add_argument("--out", help="directory for per-problem datasheets")
    p_probs.set_defaults(func=_cmd_problems)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
