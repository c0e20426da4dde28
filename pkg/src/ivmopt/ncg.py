"""Nonlinear conjugate-gradient iteration for interval-valued multiobjective
problems.

Each iteration solves the direction subproblem for (v(x_k), xi(x_k)), stops
when xi(x_k) > -eps (Pareto criticality certified), otherwise builds the
conjugate direction

    d_k = v(x_k) + beta_k * d_{k-1}        (d_0 = v(x_0))

with beta_k one of the PRP/HS/LS quotients below clipped at zero (SD keeps
beta = 0), enforces the sufficient descent condition

    psi_upsilon(x_k, d_k) <= c * psi_upsilon(x_k, v(x_k))

by restarting to d_k = v(x_k) when it fails, and takes a Wolfe step.

All three quotients share the numerator
``-psi_{x_k}(v_k) + psi_{x_{k-1}}(v_k)`` and differ in the denominator:
PRP uses ``-psi_{x_{k-1}}(v_{k-1})``, HS uses
``psi_{x_k}(d_{k-1}) - psi_{x_{k-1}}(d_{k-1})``, and LS uses
``-psi_{x_{k-1}}(d_{k-1})``. On degenerate (zero-width) single-objective
problems they collapse to the classical formulas.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np

from .ivf import Ivmop, gradient_matrices, psi_from_matrices
from .linesearch import LineSearchError, WolfeParams, search
from .subproblem import QpError, solve_direction_from_matrices

__all__ = [
    "BetaKind",
    "Status",
    "VariantConfig",
    "IterationState",
    "SolveTrace",
    "RestartNeeded",
    "beta_prp",
    "beta_hs",
    "beta_ls",
    "direction",
    "enforce_sufficient_descent",
    "solve",
    "trace_to_csv",
    "TRACE_CSV_HEADER",
]

DENOM_TOL = 1e-14


class BetaKind(str, enum.Enum):
    SD = "sd"
    PRP = "prp"
    HS = "hs"
    LS = "ls"


class Status(str, enum.Enum):
    CRITICAL = "critical"
    MAX_ITERS = "max_iters"
    LINESEARCH_FAIL = "linesearch_fail"
    QP_FAIL = "qp_fail"


@dataclass(frozen=True)
class VariantConfig:
    beta_kind: BetaKind = BetaKind.PRP
    c: float = 0.1
    eps: float = 1e-6
    max_iters: int = 50000
    wolfe: WolfeParams = field(default_factory=WolfeParams)

    def __post_init__(self) -> None:
        if self.c <= 0.0:
            raise ValueError("sufficient-descent constant c must be positive")
        if self.eps <= 0.0:
            raise ValueError("criticality tolerance eps must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        object.__setattr__(self, "beta_kind", BetaKind(self.beta_kind))


@dataclass(frozen=True)
class IterationState:
    """One row of the solve trace.

    The terminal state of a critical run carries the certifying (v, xi) with
    d = 0 and t = 0 since no further step is taken.
    """

    k: int
    x: np.ndarray
    v: np.ndarray
    xi: float
    d: np.ndarray
    t: float
    beta: float
    restarted: bool


@dataclass(frozen=True)
class SolveTrace:
    states: tuple[IterationState, ...]
    status: Status
    wall_time: float

    @property
    def iterations(self) -> int:
        """Number of accepted steps (the terminal check does not count)."""
        return sum(1 for s in self.states if s.t > 0.0)

    @property
    def final(self) -> IterationState:
        return self.states[-1]


class RestartNeeded(ArithmeticError):
    """A beta denominator is below the underflow guard; use beta = 0."""


def _beta_quotient(numer: float, denom: float) -> float:
    if abs(denom) < DENOM_TOL:
        raise RestartNeeded(f"beta denominator {denom:.3e} below {DENOM_TOL:g}")
    return numer / denom


def beta_prp(prev: IterationState, cur_v: np.ndarray, cur_x: np.ndarray,
             problem: Ivmop) -> float:
    """PRP quotient (before clipping) from the previous iteration state."""
    glo_p, ghi_p = gradient_matrices(problem, prev.x)
    glo_c, ghi_c = gradient_matrices(problem, cur_x)
    numer = (-psi_from_matrices(glo_c, ghi_c, cur_v)
             + psi_from_matrices(glo_p, ghi_p, cur_v))
    denom = -psi_from_matrices(glo_p, ghi_p, prev.v)
    return _beta_quotient(numer, denom)


def beta_hs(prev: IterationState, cur_v: np.ndarray, cur_x: np.ndarray,
            problem: Ivmop) -> float:
    """HS quotient (before clipping) from the previous iteration state."""
    glo_p, ghi_p = gradient_matrices(problem, prev.x)
    glo_c, ghi_c = gradient_matrices(problem, cur_x)
    numer = (-psi_from_matrices(glo_c, ghi_c, cur_v)
             + psi_from_matrices(glo_p, ghi_p, cur_v))
    denom = (psi_from_matrices(glo_c, ghi_c, prev.d)
             - psi_from_matrices(glo_p, ghi_p, prev.d))
    return _beta_quotient(numer, denom)


def beta_ls(prev: IterationState, cur_v: np.ndarray, cur_x: np.ndarray,
            problem: Ivmop) -> float:
    """LS quotient (before clipping) from the previous iteration state."""
    glo_p, ghi_p = gradient_matrices(problem, prev.x)
    glo_c, ghi_c = gradient_matrices(problem, cur_x)
    numer = (-psi_from_matrices(glo_c, ghi_c, cur_v)
             + psi_from_matrices(glo_p, ghi_p, cur_v))
    denom = -psi_from_matrices(glo_p, ghi_p, prev.d)
    return _beta_quotient(numer, denom)


def direction(cur_v: np.ndarray, beta_clipped: float,
              d_prev: np.ndarray | None) -> np.ndarray:
    """Conjugate direction v + beta * d_prev (v alone on the first iteration
    or after a restart)."""
    if beta_clipped < 0.0:
        raise ValueError("beta must be clipped at zero before use")
    if d_prev is None:
        return np.array(cur_v, dtype=float, copy=True)
    return cur_v + beta_clipped * d_prev


def enforce_sufficient_descent(problem: Ivmop, x: np.ndarray, v: np.ndarray,
                               d: np.ndarray, c: float) -> tuple[np.ndarray, bool]:
    """Return (d, False) when psi(x, d) <= c * psi(x, v), else restart (v, True)."""
    glo, ghi = gradient_matrices(problem, x)
    psi_v = psi_from_matrices(glo, ghi, v)
    psi_d = psi_from_matrices(glo, ghi, d)
    if psi_d <= c * psi_v:
        return d, False
    return np.array(v, dtype=float, copy=True), True


def _raw_beta(kind: BetaKind, cur: dict, prev: dict) -> float:
    numer = -cur["psi_v"] + psi_from_matrices(prev["glo"], prev["ghi"], cur["v"])
    if kind is BetaKind.PRP:
        denom = -prev["psi_v"]
    elif kind is BetaKind.HS:
        denom = (psi_from_matrices(cur["glo"], cur["ghi"], prev["d"])
                 - prev["psi_d"])
    elif kind is BetaKind.LS:
        denom = -prev["psi_d"]
    else:
        raise AssertionError(kind)
    return _beta_quotient(numer, denom)


def solve(problem: Ivmop, x0: np.ndarray, cfg: VariantConfig) -> SolveTrace:
    """Run the conjugate-gradient iteration from x0 until criticality,
    iteration exhaustion, or a solver failure (recorded, never raised)."""
    t_start = time.perf_counter()
    x = np.array(x0, dtype=float, copy=True)
    if x.shape != (problem.n,):
        raise ValueError(f"expected start of dimension {problem.n}, got {x.shape}")

    states: list[IterationState] = []
    prev: dict | None = None
    status = Status.MAX_ITERS

    for k in range(cfg.max_iters + 1):
        glo, ghi = gradient_matrices(problem, x)
        try:
            sol = solve_direction_from_matrices(glo, ghi)
        except QpError:
            status = Status.QP_FAIL
            break
        v, xi = sol.v, sol.xi

        if xi > -cfg.eps:
            states.append(IterationState(k=k, x=x, v=v, xi=xi,
                                         d=np.zeros_like(v), t=0.0, beta=0.0,
                                         restarted=False))
            status = Status.CRITICAL
            break
        if k == cfg.max_iters:
            states.append(IterationState(k=k, x=x, v=v, xi=xi,
                                         d=np.zeros_like(v), t=0.0, beta=0.0,
                                         restarted=False))
            status = Status.MAX_ITERS
            break

        psi_v = psi_from_matrices(glo, ghi, v)
        beta = 0.0
        restarted = False
        if cfg.beta_kind is BetaKind.SD or prev is None:
            d = np.array(v, copy=True)
            psi_d = psi_v
        else:
            cur = {"glo": glo, "ghi": ghi, "v": v, "psi_v": psi_v}
            try:
                beta = max(0.0, _raw_beta(cfg.beta_kind, cur, prev))
            except RestartNeeded:
                beta = 0.0
                restarted = True
            d = v + beta * prev["d"]
            psi_d = psi_from_matrices(glo, ghi, d)
            if psi_d > cfg.c * psi_v:
                d = np.array(v, copy=True)
                psi_d = psi_v
                beta = 0.0
                restarted = True

        if psi_d >= 0.0:
            # numerically zero slope: restart, and only fail if v itself
            # has stopped descending (cannot happen while xi <= -eps)
            d = np.array(v, copy=True)
            psi_d = psi_v
            beta = 0.0
            restarted = True
            if psi_d >= 0.0:
                states.append(IterationState(k=k, x=x, v=v, xi=xi, d=d, t=0.0,
                                             beta=beta, restarted=restarted))
                status = Status.LINESEARCH_FAIL
                break

        try:
            t = search(problem, x, d, cfg.wolfe, psi=psi_d)
        except LineSearchError:
            states.append(IterationState(k=k, x=x, v=v, xi=xi, d=d, t=0.0,
                                         beta=beta, restarted=restarted))
            status = Status.LINESEARCH_FAIL
            break

        states.append(IterationState(k=k, x=x, v=v, xi=xi, d=d, t=t,
                                     beta=beta, restarted=restarted))
        prev = {"glo": glo, "ghi": ghi, "v": v, "d": d,
                "psi_v": psi_v, "psi_d": psi_d}
        x = x + t * d

    return SolveTrace(states=tuple(states), status=status,
                      wall_time=time.perf_counter() - t_start)


TRACE_CSV_HEADER = "k,xi,v_norm,beta,t,restarted"


def trace_to_csv(trace: SolveTrace, path: str) -> None:
    """One row per iteration: k, xi, ||v||, beta, t, restarted."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(TRACE_CSV_HEADER + "\n")
        for s in trace.states:
            vnorm = float(np.linalg.norm(s.v))
            fh.write(f"{s.k},{s.xi:.17g},{vnorm:.17g},{s.beta:.17g},"
                     f"{s.t:.17g},{str(s.restarted).lower()}\n")
