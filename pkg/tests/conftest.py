"""Shared builders for degenerate (classical) and interval test problems."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ivmopt.ivf import IntervalObjective, Ivmop

# property tests here are cheap per example; the wall-clock deadline only
# adds flakiness on slow machines
settings.register_profile("ivmopt", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ivmopt")


def quadratic(center, weights=None):
    """f(x) = sum_j w_j (x_j - c_j)^2 and its gradient."""
    center = np.asarray(center, dtype=float)
    weights = (np.ones_like(center) if weights is None
               else np.asarray(weights, dtype=float))

    def f(x, c=center, a=weights):
        return float(a @ (np.asarray(x, float) - c) ** 2)

    def g(x, c=center, a=weights):
        return 2.0 * a * (np.asarray(x, float) - c)

    return f, g


def degenerate_objective(f, g) -> IntervalObjective:
    """Classical objective viewed as a zero-width interval objective."""
    return IntervalObjective(lower_fn=f, upper_fn=f, lower_grad=g, upper_grad=g)


def width_objective(f, g, w, gw) -> IntervalObjective:
    return IntervalObjective(
        lower_fn=f,
        upper_fn=lambda x, f=f, w=w: f(x) + w(x),
        lower_grad=g,
        upper_grad=lambda x, g=g, gw=gw: g(x) + gw(x),
    )


def make_problem(objectives, n, name="test", box=5.0) -> Ivmop:
    return Ivmop(name=name, n=n, m=len(objectives),
                 objectives=tuple(objectives),
                 box_lo=np.full(n, -box), box_hi=np.full(n, box))


def single_quadratic_problem(center, weights=None) -> Ivmop:
    f, g = quadratic(center, weights)
    return make_problem([degenerate_objective(f, g)], n=len(center))


def rosenbrock(n):
    """Chained Rosenbrock with analytic gradient (degenerate test workhorse)."""

    def f(x):
        x = np.asarray(x, float)
        return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2
                            + (1.0 - x[:-1]) ** 2))

    def g(x):
        x = np.asarray(x, float)
        grad = np.zeros_like(x)
        grad[:-1] = (-400.0 * x[:-1] * (x[1:] - x[:-1] ** 2)
                     - 2.0 * (1.0 - x[:-1]))
        grad[1:] += 200.0 * (x[1:] - x[:-1] ** 2)
        return grad

    return f, g


def grid_search_direction(glo, ghi, step=1e-3, half_range=3.0):
    """Independent dense grid minimization of the direction objective
    max_i [mid_i'v + rad_i'|v|] + ||v||^2/2 over a square grid (n = 2)."""
    glo = np.asarray(glo, float)
    ghi = np.asarray(ghi, float)
    mid = 0.5 * (glo + ghi)
    rad = 0.5 * (ghi - glo)
    half_cells = int(round(half_range / step))
    xs = np.arange(-half_cells, half_cells + 1) * step
    best_val = np.inf
    best_v = None
    for i0 in range(0, xs.size, 400):
        v1 = xs[i0:i0 + 400][:, None]
        v2 = xs[None, :]
        fmax = None
        for k in range(glo.shape[0]):
            val = (mid[k, 0] * v1 + mid[k, 1] * v2
                   + rad[k, 0] * np.abs(v1) + rad[k, 1] * np.abs(v2))
            fmax = val if fmax is None else np.maximum(fmax, val)
        total = fmax + 0.5 * (v1 ** 2 + v2 ** 2)
        idx = np.unravel_index(np.argmin(total), total.shape)
        if total[idx] < best_val:
            best_val = float(total[idx])
            best_v = np.array([v1[idx[0], 0], v2[0, idx[1]]])
    return best_v, best_val


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
