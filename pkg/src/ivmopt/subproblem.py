"""Direction-finding subproblem and Pareto-criticality certification.

At a point x, the steepest common descent direction v(x) and the certificate
value xi(x) are the minimizer and minimum of

    psi_upsilon(x, v) + 0.5 ||v||^2      over v in R^n,

computed through an equivalent quadratic program (see the kernel modules).
xi(x) is never positive; it vanishes exactly at Pareto critical points, and
otherwise v(x) is a common descent direction for every objective.

Two QP kernels implement the same active-set algorithm: a compiled extension
(``ivmopt._qp_core``) and a pure-numpy fallback (``ivmopt._qp_py``). The
compiled one is preferred at import; set ``IVMOPT_PURE_PYTHON=1`` to force
the fallback. ``KERNEL_NAME`` records the choice.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _qp_py
from .ivf import Ivmop, gradient_matrices, psi_from_matrices

__all__ = [
    "SubproblemSolution",
    "QpError",
    "solve_direction",
    "solve_direction_from_matrices",
    "is_pareto_critical",
    "brute_force_critical_check",
    "KERNEL_NAME",
]

if os.environ.get("IVMOPT_PURE_PYTHON"):
    _kernel = _qp_py
    KERNEL_NAME = "pure"
else:
    try:
        from . import _qp_core as _kernel  # type: ignore[no-redef]

        KERNEL_NAME = "compiled"
    except ImportError:
        _kernel = _qp_py
        KERNEL_NAME = "pure"


class QpError(RuntimeError):
    """Active-set solve did not reach the KKT tolerance within its cap."""


@dataclass(frozen=True)
class SubproblemSolution:
    """Certified direction: v(x), value xi(x), auxiliary tau, solve quality."""

    v: np.ndarray
    xi: float
    tau: float
    kkt_residual: float


def solve_direction_from_matrices(glo: np.ndarray, ghi: np.ndarray,
                                  kkt_tol: float = 1e-10,
                                  max_iter: int | None = None) -> SubproblemSolution:
    """Direction solve given pre-evaluated gH-gradient matrices."""
    res = _kernel.solve_qp(glo, ghi, kkt_tol, max_iter)
    if not res.converged:
        raise QpError(
            f"direction QP did not converge: residual {res.kkt_residual:.3e} "
            f"after {res.iterations} active-set iterations"
        )
    v = res.v
    # u := |v| and tau recomputed from v remove active-set slack noise.
    tau = psi_from_matrices(glo, ghi, v)
    xi = tau + 0.5 * float(v @ v)
    return SubproblemSolution(v=v, xi=xi, tau=tau, kkt_residual=res.kkt_residual)


def solve_direction(problem: Ivmop, x: np.ndarray,
                    kkt_tol: float = 1e-10,
                    max_iter: int | None = None) -> SubproblemSolution:
    """Solve the direction-finding problem at x for all objectives at once."""
    x = np.asarray(x, dtype=float)
    if x.shape != (problem.n,):
        raise ValueError(f"expected point of dimension {problem.n}, got {x.shape}")
    glo, ghi = gradient_matrices(problem, x)
    return solve_direction_from_matrices(glo, ghi, kkt_tol, max_iter)


def is_pareto_critical(problem: Ivmop, x: np.ndarray, eps: float) -> bool:
    """True iff the criticality certificate xi(x) lies above -eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return solve_direction(problem, x).xi > -eps


def _unit_directions(n: int, grid_step: float) -> np.ndarray:
    """Deterministic covering of the unit sphere at angular resolution
    ``grid_step``: both signs for n=1, a uniform circle for n=2, and a
    Fibonacci sphere for n=3."""
    if n == 1:
        return np.array([[-1.0], [1.0]])
    if n == 2:
        k = max(4, int(round(2.0 * math.pi / grid_step)))
        angles = 2.0 * math.pi * np.arange(k) / k
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if n == 3:
        k = max(8, int(round(4.0 * math.pi / grid_step ** 2)))
        i = np.arange(k) + 0.5
        phi = math.pi * (3.0 - math.sqrt(5.0)) * i
        cos_theta = 1.0 - 2.0 * i / k
        sin_theta = np.sqrt(np.maximum(0.0, 1.0 - cos_theta ** 2))
        return np.column_stack(
            [sin_theta * np.cos(phi), sin_theta * np.sin(phi), cos_theta]
        )
    raise ValueError("direction sampling oracle supports n <= 3 only")


def brute_force_critical_check(problem: Ivmop, x: np.ndarray, grid_step: float,
                               eps: float = 0.0) -> bool:
    """Criticality oracle by direction sampling (n <= 3 only).

    Declares x critical iff no sampled unit direction improves every
    objective's upper directional functional below the cutoff. With
    ``eps=0`` the cutoff is exactly 0; otherwise it is -sqrt(2*eps), the
    unit-direction value at which the certificate xi crosses -eps (for unit
    v, the best achievable xi along the ray t*v is -max(0, -g)^2/2), so the
    oracle and :func:`is_pareto_critical` test the same threshold.
    """
    x = np.asarray(x, dtype=float)
    glo, ghi = gradient_matrices(problem, x)
    mid = 0.5 * (glo + ghi)
    rad = 0.5 * (ghi - glo)
    cutoff = -math.sqrt(2.0 * eps) if eps > 0 else 0.0
    for v in _unit_directions(problem.n, grid_step):
        if float(np.max(mid @ v + rad @ np.abs(v))) < cutoff:
            return False
    return True
