"""Benchmark harness: seeded run grids, summaries, and performance profiles.

A grid runs every (problem, variant, start) combination. Fairness rule: the
start vector for (problem, start-index) is derived from the base seed alone,
so every variant sees exactly the same starting points. Iteration counts are
a pure function of the grid specification; wall times are measured with a
monotonic clock and are informational only.

Profiles follow the usual construction: for each problem p and solver s the
ratio R_{p,s} divides the solver's mean metric by the best solver mean on
that problem, and each solver's curve is the empirical CDF of its ratios.
"""

from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass, replace

from .ncg import BetaKind, SolveTrace, Status, VariantConfig, solve
from .problems import ProblemSpec, sample_start

__all__ = [
    "RunRecord",
    "GroupSummary",
    "ProfileCurve",
    "derive_start_seed",
    "run_grid",
    "summarize",
    "performance_profile",
    "write_records_csv",
    "read_records_csv",
    "write_profile_csv",
    "write_profile_svg",
    "emit",
    "RECORDS_CSV_HEADER",
]

RECORDS_CSV_HEADER = ["problem", "variant", "seed", "iterations",
                      "wall_time_s", "status", "final_xi"]


@dataclass(frozen=True)
class RunRecord:
    problem: str
    variant: str
    seed: int
    iterations: int
    wall_time: float
    status: Status
    final_xi: float


@dataclass(frozen=True)
class GroupSummary:
    problem: str
    variant: str
    iter_min: int
    iter_mean: float
    iter_max: int
    time_min: float
    time_mean: float
    time_max: float


@dataclass(frozen=True)
class ProfileCurve:
    solver: str
    points: tuple[tuple[float, float], ...]  # (ratio z, fraction solved F)


def derive_start_seed(base_seed: int, problem_name: str, start_index: int) -> int:
    """Stable 63-bit seed for one (problem, start) cell, variant-independent."""
    digest = hashlib.sha256(
        f"{base_seed}:{problem_name}:{start_index}".encode()
    ).digest()
    return int.from_bytes(digest[:8], "little") & ((1 << 63) - 1)


def _final_xi(trace: SolveTrace) -> float:
    return trace.states[-1].xi if trace.states else float("nan")


def run_grid(problem_specs: list[ProblemSpec], variants: list[str],
             n_starts: int, base_seed: int,
             cfg: VariantConfig | None = None) -> list[RunRecord]:
    """One record per (problem, variant, start); failures are recorded in the
    status column, never raised. Records come back sorted by
    (problem, variant, seed)."""
    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    base_cfg = cfg if cfg is not None else VariantConfig()
    kinds = [BetaKind(v) for v in variants]
    records: list[RunRecord] = []
    for spec in problem_specs:
        for start in range(n_starts):
            seed = derive_start_seed(base_seed, spec.name, start)
            x0 = sample_start(spec, seed)
            for kind in kinds:
                trace = solve(spec.ivmop, x0, replace(base_cfg, beta_kind=kind))
                records.append(RunRecord(
                    problem=spec.name, variant=kind.value, seed=seed,
                    iterations=trace.iterations, wall_time=trace.wall_time,
                    status=trace.status, final_xi=_final_xi(trace)))
    records.sort(key=lambda r: (r.problem, r.variant, r.seed))
    return records


def summarize(records: list[RunRecord]) -> list[GroupSummary]:
    """(min, mean, max) of iterations and wall time per (problem, variant)."""
    if not records:
        raise ValueError("cannot summarize an empty record list")
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for rec in records:
        groups.setdefault((rec.problem, rec.variant), []).append(rec)
    out = []
    for (problem, variant) in sorted(groups):
        rs = groups[(problem, variant)]
        iters = [r.iterations for r in rs]
        times = [r.wall_time for r in rs]
        out.append(GroupSummary(
            problem=problem, variant=variant,
            iter_min=min(iters), iter_mean=sum(iters) / len(iters),
            iter_max=max(iters),
            time_min=min(times), time_mean=sum(times) / len(times),
            time_max=max(times)))
    return out


def performance_profile(records: list[RunRecord],
                        metric: str = "iterations") -> list[ProfileCurve]:
    """Per-solver CDF of per-problem performance ratios.

    ``metric`` is "iterations" (aliases "iters") or "time". Every
    (problem, solver) pair must be present with positive mean; tied best
    means give every tied solver ratio exactly 1.
    """
    if metric in ("iterations", "iters"):
        value = lambda r: float(r.iterations)
    elif metric == "time":
        value = lambda r: r.wall_time
    else:
        raise ValueError(f"unknown metric {metric!r}")

    sums: dict[tuple[str, str], list[float]] = {}
    problems: list[str] = []
    solvers: list[str] = []
    for rec in records:
        if rec.problem not in problems:
            problems.append(rec.problem)
        if rec.variant not in solvers:
            solvers.append(rec.variant)
        sums.setdefault((rec.problem, rec.variant), []).append(value(rec))

    means: dict[tuple[str, str], float] = {}
    for problem in problems:
        for solver in solvers:
            vals = sums.get((problem, solver))
            if not vals:
                raise ValueError(f"no records for ({problem}, {solver})")
            mean = sum(vals) / len(vals)
            if mean <= 0.0:
                raise ValueError(
                    f"mean {metric} for ({problem}, {solver}) is not positive")
            means[(problem, solver)] = mean

    n_p = len(problems)
    curves = []
    for solver in solvers:
        ratios = []
        for problem in problems:
            best = min(means[(problem, s)] for s in solvers)
            mine = means[(problem, solver)]
            ratios.append(1.0 if mine == best else mine / best)
        zs = sorted(set(ratios))
        if zs[0] != 1.0:
            zs.insert(0, 1.0)
        points = tuple((z, sum(1 for r in ratios if r <= z) / n_p) for z in zs)
        curves.append(ProfileCurve(solver=solver, points=points))
    return curves


# -- serialization ----------------------------------------------------------


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_records_csv(records: list[RunRecord], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORDS_CSV_HEADER)
        for r in records:
            writer.writerow([r.problem, r.variant, r.seed, r.iterations,
                             _fmt(r.wall_time), Status(r.status).value,
                             _fmt(r.final_xi)])


def read_records_csv(path: str) -> list[RunRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != RECORDS_CSV_HEADER:
            raise ValueError(f"unexpected records header: {header}")
        for row in reader:
            records.append(RunRecord(
                problem=row[0], variant=row[1], seed=int(row[2]),
                iterations=int(row[3]), wall_time=float(row[4]),
                status=Status(row[5]), final_xi=float(row[6])))
    return records


def write_profile_csv(curves: list[ProfileCurve], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["solver", "z", "F"])
        for curve in curves:
            for z, f in curve.points:
                writer.writerow([curve.solver, _fmt(z), _fmt(f)])


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
               "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def write_profile_svg(curves: list[ProfileCurve], path: str,
                      width: int = 640, height: int = 480) -> None:
    """Step plot of the profile curves with a log-scaled ratio axis."""
    ml, mr, mt, mb = 60, 20, 20, 45
    pw, ph = width - ml - mr, height - mt - mb
    zmax = max((c.points[-1][0] for c in curves if c.points), default=1.0)
    zmax = max(zmax, 1.0 + 1e-9)
    lzmax = math.log(zmax)

    def sx(z: float) -> float:
        return ml + pw * (math.log(max(z, 1.0)) / lzmax)

    def sy(f: float) -> float:
        return mt + ph * (1.0 - f)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" '
        'stroke="black"/>',
        f'<text x="{ml + pw / 2:.1f}" y="{height - 8}" text-anchor="middle" '
        'font-size="13">performance ratio z (log scale)</text>',
        f'<text x="14" y="{mt + ph / 2:.1f}" text-anchor="middle" '
        f'font-size="13" transform="rotate(-90 14 {mt + ph / 2:.1f})">'
        'fraction of problems</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = sy(frac)
        parts.append(f'<line x1="{ml}" y1="{y:.2f}" x2="{ml + pw}" '
                     f'y2="{y:.2f}" stroke="#dddddd"/>')
        parts.append(f'<text x="{ml - 6}" y="{y + 4:.2f}" text-anchor="end" '
                     f'font-size="11">{frac:g}</text>')
    for color, curve in zip(_SVG_COLORS, curves):
        pts: list[str] = []
        prev_f = None
        for z, f in curve.points:
            x = sx(z)
            if prev_f is not None:
                pts.append(f"{x:.2f},{sy(prev_f):.2f}")  # horizontal run
            pts.append(f"{x:.2f},{sy(f):.2f}")
            prev_f = f
        if prev_f is not None:
            pts.append(f"{ml + pw:.2f},{sy(prev_f):.2f}")  # extend to zmax
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.8" points="{" ".join(pts)}"/>')
    for i, (color, curve) in enumerate(zip(_SVG_COLORS, curves)):
        y = mt + 16 + 16 * i
        parts.append(f'<line x1="{ml + pw - 110}" y1="{y}" '
                     f'x2="{ml + pw - 86}" y2="{y}" stroke="{color}" '
                     'stroke-width="1.8"/>')
        parts.append(f'<text x="{ml + pw - 80}" y="{y + 4}" '
                     f'font-size="12">{curve.solver}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def emit(payload, fmt: str, path: str) -> str:
    """Dispatching writer: records or curves, as csv or svg. Returns path."""
    is_records = all(isinstance(p, RunRecord) for p in payload)
    if fmt == "csv":
        if is_records:
            write_records_csv(payload, path)
        else:
            write_profile_csv(payload, path)
    elif fmt == "svg":
        if is_records:
            raise ValueError("svg output is only defined for profile curves")
        write_profile_svg(payload, path)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return path
