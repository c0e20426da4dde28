"""Pure-numpy active-set kernel for the direction-finding subproblem.

Given the stacked gH-gradient endpoint matrices ``glo <= ghi`` (shape (m, n)),
solve the convex quadratic program over z = (v, u, tau):

    min  tau + 0.5 ||v||^2
    s.t. (glo_i + ghi_i)' v + (ghi_i - glo_i)' u <= 2 tau   for each objective i
         -u_j <= v_j <= u_j                                  for each coordinate j
         -u_j <= 0                                           (redundant, kept for stability)

whose v-part is the steepest common descent direction and whose optimal value
tau* + 0.5||v*||^2 certifies Pareto criticality when it vanishes.

Method: dense primal active set. Each equality-constrained subproblem is
solved through a null-space factorization (QR of A_W') rather than the raw
KKT system: the Hessian has no curvature in u or tau, and the null-space form
both exposes the reduced Hessian that must stay positive definite and makes
the step exactly zero at fully determined vertices instead of
roundoff-sized, which would otherwise stall the working-set logic.

The working set keeps the reduced Hessian positive definite by construction:

* at least one objective row always stays (stationarity in tau gives the
  working objective rows a positively-weighted multiplier sum of one, so the
  last of them never carries a negative multiplier and cannot be dropped);
* every coordinate j keeps at least one of its three u_j rows (a sole pin has
  multiplier sum_i lambda_i r_ij / c_i >= 0 whenever no objective multiplier
  is negative, so it is never the drop candidate);
* a blocking row is only added if its projection onto the current null space
  is nonnegligible, which preserves full row rank.

The QP is positively homogeneous in the gradient scale (gradients scaled by
theta give theta*v and theta^2*tau), so inputs are pre-scaled by a power of
two -- exact in binary floating point -- and the solution is scaled back on
return. Residuals are therefore relative to the gradient scale.

All tie-breaking is lowest-index, so the kernel is deterministic. The
compiled twin in ``_qp_core.pyx`` implements the same algorithm with the
orthogonal factor kept in implicit reflector form.
"""

from __future__ import annotations

import numpy as np

__all__ = ["solve_qp", "QpResult"]


class QpResult:
    """Raw kernel output; interpretation happens in :mod:`ivmopt.subproblem`."""

    __slots__ = ("v", "u", "tau", "kkt_residual", "iterations", "converged")

    def __init__(self, v, u, tau, kkt_residual, iterations, converged):
        self.v = v
        self.u = u
        self.tau = tau
        self.kkt_residual = kkt_residual
        self.iterations = iterations
        self.converged = converged


def _build_constraints(glo: np.ndarray, ghi: np.ndarray) -> np.ndarray:
    """Rows a of the feasible cone {a'z <= 0}; objective rows are scaled to
    unit infinity-norm so tolerances stay meaningful at any gradient size."""
    m, n = glo.shape
    nvar = 2 * n + 1
    a = np.zeros((m + 3 * n, nvar))
    s = glo + ghi
    r = ghi - glo
    scale = np.maximum(1.0, np.maximum(np.abs(s).max(axis=1, initial=0.0),
                                       np.abs(r).max(axis=1, initial=0.0)))
    a[:m, :n] = s / scale[:, None]
    a[:m, n:2 * n] = r / scale[:, None]
    a[:m, 2 * n] = -2.0 / scale
    for j in range(n):
        a[m + j, j] = -1.0
        a[m + j, n + j] = -1.0
        a[m + n + j, j] = 1.0
        a[m + n + j, n + j] = -1.0
        a[m + 2 * n + j, n + j] = -1.0
    return a


def _removal_candidate(lam: np.ndarray, w: np.ndarray, m: int, n: int) -> int:
    """Pick the working-set row to drop, or -1 if multipliers pass.

    A row that is the sole pin of its u coordinate is never dropped (see the
    module docstring); the most negative remaining multiplier wins, lowest
    constraint index on ties.
    """
    mtol = 1e-11 * (1.0 + np.abs(lam).max(initial=0.0))
    pins = np.zeros(n, dtype=np.intp)
    for idx in w:
        if idx >= m:
            pins[(idx - m) % n] += 1
    best = -1
    best_lam = -mtol
    for k in range(w.shape[0]):
        if lam[k] >= best_lam:
            continue
        idx = w[k]
        if idx >= m and pins[(idx - m) % n] < 2:
            continue
        best = idx
        best_lam = lam[k]
    return best


def solve_qp(glo: np.ndarray, ghi: np.ndarray,
             kkt_tol: float = 1e-10, max_iter: int | None = None) -> QpResult:
    """Solve the direction QP for one point; see the module docstring.

    ``max_iter`` caps active-set iterations (default 100 * (2n + 1)).
    """
    glo = np.ascontiguousarray(glo, dtype=float)
    ghi = np.ascontiguousarray(ghi, dtype=float)
    if glo.ndim != 2 or glo.shape != ghi.shape:
        raise ValueError("gradient matrices must both have shape (m, n)")
    maxabs = max(np.abs(glo).max(initial=0.0), np.abs(ghi).max(initial=0.0))
    theta = 1.0 if maxabs == 0.0 else 2.0 ** np.ceil(np.log2(maxabs))
    result = _solve_qp_scaled(glo / theta, ghi / theta, kkt_tol, max_iter)
    result.v *= theta
    result.u *= theta
    result.tau *= theta * theta
    return result


def _solve_qp_scaled(glo: np.ndarray, ghi: np.ndarray,
                     kkt_tol: float, max_iter: int | None) -> QpResult:
    m, n = glo.shape
    nvar = 2 * n + 1
    if max_iter is None:
        max_iter = 100 * nvar

    a = _build_constraints(glo, ghi)
    ncon = m + 3 * n

    z = np.zeros(nvar)
    in_w = np.zeros(ncon, dtype=bool)
    in_w[m + n:m + 2 * n] = True  # pair-plus rows pin every u_j at the origin
    in_w[0] = True                # one objective row fixes tau

    lam_full = np.zeros(ncon)
    converged = False
    iterations = 0

    while iterations < max_iter:
        iterations += 1
        w = np.flatnonzero(in_w)
        nw = w.shape[0]

        q_full, r_full = np.linalg.qr(a[w].T, mode="complete")
        rdiag = np.abs(np.diag(r_full[:nw, :nw]))
        if rdiag.min() <= 1e-12 * max(1.0, rdiag.max()):
            # defensive: working set lost rank; drop the offending row
            in_w[w[int(np.argmin(rdiag))]] = False
            continue
        nullity = nvar - nw
        z_basis = q_full[:, nw:]

        grad = np.zeros(nvar)
        grad[:n] = z[:n]
        grad[2 * n] = 1.0

        p = None
        if nullity > 0:
            zv = z_basis[:n, :]
            reduced_h = zv.T @ zv
            reduced_g = z_basis.T @ grad
            try:
                y = -np.linalg.solve(reduced_h, reduced_g)
            except np.linalg.LinAlgError:
                break  # reduced Hessian singular: invariant broken
            p = z_basis @ y

        if p is not None and np.abs(p).max() > 1e-11 * (1.0 + np.abs(z).max()):
            ap = a @ p
            az = a @ z
            pnorm = np.abs(p).max()
            dtol = 1e-12 * max(1.0, pnorm)
            excluded = np.zeros(ncon, dtype=bool)
            while True:
                alpha = 1.0
                block = -1
                for i in range(ncon):
                    if in_w[i] or excluded[i] or ap[i] <= dtol:
                        continue
                    ratio = -az[i] / ap[i]
                    if ratio < 0.0:
                        ratio = 0.0
                    if ratio < alpha:
                        alpha = ratio
                        block = i
                if block < 0:
                    break
                # only rows with substance outside span(A_W) keep rank
                if np.abs(z_basis.T @ a[block]).max() <= 1e-9:
                    excluded[block] = True
                    continue
                break
            z = z + alpha * p
            if block >= 0:
                in_w[block] = True
                continue
            grad[:n] = z[:n]  # full unblocked step: z is the W-minimizer

        # multipliers at the working-set minimizer: A_W' lam = -grad
        rhs = -(q_full[:, :nw].T @ grad)
        lam = np.linalg.solve(r_full[:nw, :nw], rhs)
        lam_full[:] = 0.0
        lam_full[w] = lam
        drop = _removal_candidate(lam, w, m, n)
        if drop < 0:
            converged = True
            break
        in_w[drop] = False

    grad = np.zeros(nvar)
    grad[:n] = z[:n]
    grad[2 * n] = 1.0
    stat = grad + a.T @ lam_full
    az = a @ z
    res_stat = np.abs(stat).max() / (1.0 + np.abs(grad).max())
    res_prim = max(0.0, az.max())
    res_act = np.abs(az[in_w]).max(initial=0.0)
    res_dual = max(0.0, -lam_full.min()) / (1.0 + np.abs(lam_full).max())
    residual = max(res_stat, res_prim, res_act, res_dual)
    ok = bool(converged and residual <= kkt_tol)
    return QpResult(v=z[:n].copy(), u=z[n:2 * n].copy(), tau=float(z[2 * n]),
                    kkt_residual=float(residual), iterations=iterations,
                    converged=ok)
