"""Interval-adapted weak Wolfe line search by bracketing and bisection.

A step t along a descent direction d is accepted when

(a) every objective decreases sufficiently at both endpoints:
        lower_i(x + t d) <= lower_i(x) + rho * t * psi
        upper_i(x + t d) <= upper_i(x) + rho * t * psi
    where psi = psi_upsilon(x, d) < 0, and
(b) the curvature condition holds along the ray:
        psi_upsilon(x + t d, d) >= sigma * psi.

Phase 1 doubles t from ``t_init`` until (a) fails (giving a bracket) or both
conditions hold (accept) or ``t_max`` is exceeded. Phase 2 bisects the
bracket [t_lo, t_hi] keeping t_lo sufficient-decrease-feasible and t_hi
infeasible, which converges to the boundary of the nonempty Wolfe interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ivf import Ivmop, gradient_matrices, psi_from_matrices, psi_upsilon

__all__ = ["WolfeParams", "LineSearchError", "NonDescentDirection",
           "wolfe_holds", "search"]


@dataclass(frozen=True)
class WolfeParams:
    """Wolfe constants 0 < rho < sigma < 1 plus bracketing controls."""

    rho: float = 0.001
    sigma: float = 0.1
    t_init: float = 1.0
    t_max: float = 1e6
    max_brackets: int = 60
    max_zoom: int = 60

    def __post_init__(self) -> None:
        if not (0.0 < self.rho < self.sigma < 1.0):
            raise ValueError("need 0 < rho < sigma < 1")
        if not (self.t_init > 0.0 and self.t_max >= self.t_init):
            raise ValueError("need t_init > 0 and t_max >= t_init")


class NonDescentDirection(ValueError):
    """The supplied direction does not descend (psi_upsilon(x, d) >= 0)."""


class LineSearchError(RuntimeError):
    """Bracketing/zoom budget exhausted; carries the last bracket and the
    objective/endpoint whose decrease inequality failed last (diagnostics)."""

    def __init__(self, message: str, t_lo: float, t_hi: float,
                 failing_index: tuple[int, str] | None = None):
        if failing_index is not None:
            message += (f"; last failing decrease inequality: objective "
                        f"{failing_index[0]} ({failing_index[1]} endpoint)")
        super().__init__(message)
        self.t_lo = t_lo
        self.t_hi = t_hi
        self.failing_index = failing_index


def wolfe_holds(problem: Ivmop, x: np.ndarray, d: np.ndarray, t: float,
                p: WolfeParams) -> bool:
    """Check both Wolfe conditions at step t (descent direction required)."""
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    psi = psi_upsilon(problem, x, d)
    if psi >= 0.0:
        raise NonDescentDirection(f"psi_upsilon(x, d) = {psi} >= 0")
    if t <= 0.0:
        raise ValueError("step must be positive")
    lo0, hi0 = _endpoint_values(problem, x)
    return (_sufficient_decrease(problem, x, d, t, p.rho, psi, lo0, hi0)
            and _curvature(problem, x, d, t, p.sigma, psi))


def _endpoint_values(problem: Ivmop, x: np.ndarray):
    lo = np.array([obj.lower_fn(x) for obj in problem.objectives])
    hi = np.array([obj.upper_fn(x) for obj in problem.objectives])
    return lo, hi


def _decrease_violation(problem, x, d, t, rho, psi, lo0, hi0):
    """First (objective, endpoint) whose decrease inequality fails, or None.

    All 2m endpoint inequalities are part of one condition; the index is
    diagnostic only.
    """
    xt = x + t * d
    slack = rho * t * psi
    for i, obj in enumerate(problem.objectives):
        if obj.lower_fn(xt) > lo0[i] + slack:
            return (i, "lower")
        if obj.upper_fn(xt) > hi0[i] + slack:
            return (i, "upper")
    return None


def _sufficient_decrease(problem, x, d, t, rho, psi, lo0, hi0) -> bool:
    return _decrease_violation(problem, x, d, t, rho, psi, lo0, hi0) is None


def _curvature(problem, x, d, t, sigma, psi) -> bool:
    glo, ghi = gradient_matrices(problem, x + t * d)
    return psi_from_matrices(glo, ghi, d) >= sigma * psi


def search(problem: Ivmop, x: np.ndarray, d: np.ndarray, p: WolfeParams,
           psi: float | None = None) -> float:
    """Find a step satisfying both Wolfe conditions along d.

    ``psi`` may pass a precomputed psi_upsilon(x, d). Raises
    :class:`NonDescentDirection` when d does not descend and
    :class:`LineSearchError` when the trial budget is exhausted (an
    unbounded-below objective along the ray behaves this way).
    """
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    if psi is None:
        psi = psi_upsilon(problem, x, d)
    if psi >= 0.0:
        raise NonDescentDirection(f"psi_upsilon(x, d) = {psi} >= 0")
    lo0, hi0 = _endpoint_values(problem, x)

    # Phase 1: double until sufficient decrease fails or both conditions hold.
    t_lo = 0.0
    t = p.t_init
    t_hi = None
    last_violation = None
    for _ in range(p.max_brackets):
        violation = _decrease_violation(problem, x, d, t, p.rho, psi, lo0, hi0)
        if violation is not None:
            t_hi = t
            last_violation = violation
            break
        if _curvature(problem, x, d, t, p.sigma, psi):
            return t
        t_lo = t
        t *= 2.0
        if t > p.t_max:
            raise LineSearchError(
                f"no Wolfe step below t_max={p.t_max:g} "
                "(objective may be unbounded below along d)", t_lo, t)
    if t_hi is None:
        raise LineSearchError("bracketing budget exhausted", t_lo, t)

    # Phase 2: bisect [t_lo, t_hi]; t_lo always satisfies the decrease
    # condition, t_hi never does.
    for _ in range(p.max_zoom):
        t = 0.5 * (t_lo + t_hi)
        violation = _decrease_violation(problem, x, d, t, p.rho, psi, lo0, hi0)
        if violation is not None:
            t_hi = t
            last_violation = violation
        elif _curvature(problem, x, d, t, p.sigma, psi):
            return t
        else:
            t_lo = t
    raise LineSearchError("zoom budget exhausted", t_lo, t_hi, last_violation)
