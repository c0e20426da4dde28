"""Conjugate-gradient solvers and benchmarking tools for unconstrained
interval-valued multiobjective optimization.

The public surface mirrors the layered design: exact compact-interval
arithmetic (:mod:`ivmopt.interval`), interval-valued objectives with
gH-gradients (:mod:`ivmopt.ivf`), the direction-finding subproblem and
criticality certificates (:mod:`ivmopt.subproblem`), the Wolfe line search
(:mod:`ivmopt.linesearch`), the conjugate-gradient driver (:mod:`ivmopt.ncg`),
a benchmark problem registry (:mod:`ivmopt.problems`), and the grid/profile
harness (:mod:`ivmopt.bench`).
"""

from .interval import Interval
from .ivf import GhGradient, IntervalObjective, Ivmop
from .linesearch import WolfeParams
from .ncg import BetaKind, SolveTrace, Status, VariantConfig, solve
from .problems import lookup, registry
from .subproblem import (KERNEL_NAME, SubproblemSolution, is_pareto_critical,
                         solve_direction)

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "IntervalObjective",
    "GhGradient",
    "Ivmop",
    "WolfeParams",
    "BetaKind",
    "Status",
    "VariantConfig",
    "SolveTrace",
    "solve",
    "solve_direction",
    "is_pareto_critical",
    "SubproblemSolution",
    "registry",
    "lookup",
    "KERNEL_NAME",
    "__version__",
]
