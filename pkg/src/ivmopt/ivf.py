"""Interval-valued objectives, gH-gradients, and directional functionals.

An interval-valued objective is a pair of real endpoint functions
``lower_fn(x) <= upper_fn(x)`` with analytic endpoint gradients. Its
gH-gradient at a point is the vector of intervals whose j-th component is the
min/max pair of the two endpoint partials. The directional functionals

    g_upper(grad, v) = mid(grad)'v + rad(grad)'|v|
    g_lower(grad, v) = mid(grad)'v - rad(grad)'|v|

bound the one-sided change of the objective along ``v``; the scalarization
``psi_upsilon`` takes the worst (largest) upper functional across objectives
and drives both the direction subproblem and the line search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .interval import Interval

__all__ = [
    "IntervalObjective",
    "GhGradient",
    "Ivmop",
    "eval_objective",
    "gh_gradient",
    "g_upper",
    "g_lower",
    "psi_upsilon",
    "gradient_matrices",
    "psi_from_matrices",
    "finite_difference_gradient",
]

Vector = np.ndarray
Fn = Callable[[Vector], float]
GradFn = Callable[[Vector], Vector]


@dataclass(frozen=True)
class IntervalObjective:
    """One objective: endpoint functions and their analytic gradients.

    ``lower_fn(x) <= upper_fn(x)`` must hold on the problem's domain. The
    gradients are called in the line-search inner loop, so they should be
    analytic; see :func:`finite_difference_gradient` for a test-only fallback.
    """

    lower_fn: Fn
    upper_fn: Fn
    lower_grad: GradFn
    upper_grad: GradFn


@dataclass(frozen=True)
class GhGradient:
    """gH-gradient: componentwise [min, max] of the two endpoint gradients."""

    lo: Vector
    hi: Vector

    def __post_init__(self) -> None:
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("gH-gradient endpoints must be 1-D arrays of equal length")
        if np.any(lo > hi):
            raise ValueError("gH-gradient lower endpoints exceed upper endpoints")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def n(self) -> int:
        return self.lo.shape[0]

    @property
    def components(self) -> tuple[Interval, ...]:
        return tuple(Interval(a, b) for a, b in zip(self.lo, self.hi))

    @property
    def mid(self) -> Vector:
        return 0.5 * (self.lo + self.hi)

    @property
    def rad(self) -> Vector:
        return 0.5 * (self.hi - self.lo)


@dataclass(frozen=True)
class Ivmop:
    """An unconstrained interval-valued multiobjective problem instance.

    ``box_lo``/``box_hi`` bound the region starting points are sampled from;
    iterates are free to leave it (the problem itself is unconstrained).
    """

    name: str
    n: int
    m: int
    objectives: tuple[IntervalObjective, ...]
    box_lo: Vector
    box_hi: Vector

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError("need n >= 1 and m >= 1")
        if len(self.objectives) != self.m:
            raise ValueError(f"expected {self.m} objectives, got {len(self.objectives)}")
        box_lo = np.asarray(self.box_lo, dtype=float)
        box_hi = np.asarray(self.box_hi, dtype=float)
        if box_lo.shape != (self.n,) or box_hi.shape != (self.n,):
            raise ValueError("box bounds must have shape (n,)")
        if not np.all(box_lo < box_hi):
            raise ValueError("box_lo must be strictly below box_hi componentwise")
        box_lo.flags.writeable = False
        box_hi.flags.writeable = False
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "box_lo", box_lo)
        object.__setattr__(self, "box_hi", box_hi)

    def eval_all(self, x: Vector) -> tuple[Interval, ...]:
        return tuple(eval_objective(obj, x) for obj in self.objectives)


def eval_objective(obj: IntervalObjective, x: Vector) -> Interval:
    """Evaluate one objective at ``x``; raises on endpoint inversion."""
    x = np.asarray(x, dtype=float)
    return Interval(float(obj.lower_fn(x)), float(obj.upper_fn(x)))


def gh_gradient(obj: IntervalObjective, x: Vector) -> GhGradient:
    x = np.asarray(x, dtype=float)
    gl = np.asarray(obj.lower_grad(x), dtype=float)
    gu = np.asarray(obj.upper_grad(x), dtype=float)
    return GhGradient(np.minimum(gl, gu), np.maximum(gl, gu))


def g_upper(grad: GhGradient, v: Vector) -> float:
    """Upper directional functional mid'v + rad'|v|."""
    v = np.asarray(v, dtype=float)
    return float(grad.mid @ v + grad.rad @ np.abs(v))


def g_lower(grad: GhGradient, v: Vector) -> float:
    """Lower directional functional mid'v - rad'|v|."""
    v = np.asarray(v, dtype=float)
    return float(grad.mid @ v - grad.rad @ np.abs(v))


def gradient_matrices(problem: Ivmop, x: Vector) -> tuple[np.ndarray, np.ndarray]:
    """Stack all gH-gradients at ``x`` into (m, n) lower/upper matrices.

    This is the solver's fast path: one pair of matrices feeds the direction
    subproblem, psi evaluations, and the conjugacy parameters.
    """
    x = np.asarray(x, dtype=float)
    m, n = problem.m, problem.n
    glo = np.empty((m, n))
    ghi = np.empty((m, n))
    for i, obj in enumerate(problem.objectives):
        gl = np.asarray(obj.lower_grad(x), dtype=float)
        gu = np.asarray(obj.upper_grad(x), dtype=float)
        np.minimum(gl, gu, out=glo[i])
        np.maximum(gl, gu, out=ghi[i])
    return glo, ghi


def psi_from_matrices(glo: np.ndarray, ghi: np.ndarray, v: Vector) -> float:
    """max_i [mid_i'v + rad_i'|v|] given stacked gH-gradient matrices."""
    v = np.asarray(v, dtype=float)
    mid = 0.5 * (glo + ghi)
    rad = 0.5 * (ghi - glo)
    return float(np.max(mid @ v + rad @ np.abs(v)))


def psi_upsilon(problem: Ivmop, x: Vector, v: Vector) -> float:
    """Worst-case upper directional functional across all objectives."""
    glo, ghi = gradient_matrices(problem, x)
    return psi_from_matrices(glo, ghi, v)


def finite_difference_gradient(fn: Fn, x: Vector, rel_step: float = 1e-6) -> Vector:
    """Central finite differences with step ``rel_step * (1 + |x_j|)``.

    Testing fallback only: the solver requires analytic endpoint gradients.
    """
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for j in range(x.shape[0]):
        h = rel_step * (1.0 + abs(x[j]))
        xp = x.copy()
        xm = x.copy()
        xp[j] += h
        xm[j] -= h
        g[j] = (fn(xp) - fn(xm)) / (2.0 * h)
    return g
