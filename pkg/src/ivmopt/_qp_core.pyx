# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled active-set kernel for the direction-finding subproblem.

Statement-for-statement mirror of :mod:`ivmopt._qp_py` (see that module for
the algorithm notes), with one representation difference: the orthogonal
factor of the working-set QR is kept as Householder reflectors and applied
on demand instead of being materialized, which is what makes this kernel
profitable at larger dimensions. Only the null-space columns needed for the
reduced Hessian are formed explicitly. Everything is hand-rolled on libc so
the extension has no link-time dependencies. Selected automatically at
import by :mod:`ivmopt.subproblem` when present.
"""

import numpy as np

cimport cython
from libc.math cimport ceil, fabs, log2, sqrt

from ._qp_py import QpResult, _build_constraints


cdef void _householder_qr(double[:, ::1] at, double[:, ::1] refl,
                          int nvar, int nw) noexcept:
    """In-place QR of the nvar x nw matrix ``at``; unit reflectors end up in
    ``refl`` and the upper triangle of ``at`` becomes R."""
    cdef int k, i, j
    cdef double norm_x, alpha, v0, vnorm, dot
    for k in range(nw):
        norm_x = 0.0
        for i in range(k, nvar):
            norm_x += at[i, k] * at[i, k]
        norm_x = sqrt(norm_x)
        if norm_x == 0.0:
            for i in range(k, nvar):
                refl[i, k] = 0.0
            continue
        alpha = -norm_x if at[k, k] >= 0.0 else norm_x
        v0 = at[k, k] - alpha
        vnorm = sqrt(v0 * v0 + norm_x * norm_x - at[k, k] * at[k, k])
        if vnorm == 0.0:
            for i in range(k, nvar):
                refl[i, k] = 0.0
            at[k, k] = alpha
            continue
        refl[k, k] = v0 / vnorm
        for i in range(k + 1, nvar):
            refl[i, k] = at[i, k] / vnorm
        for j in range(k, nw):
            dot = 0.0
            for i in range(k, nvar):
                dot += refl[i, k] * at[i, j]
            dot *= 2.0
            for i in range(k, nvar):
                at[i, j] -= dot * refl[i, k]
        at[k, k] = alpha
        for i in range(k + 1, nvar):
            at[i, k] = 0.0


cdef void _apply_q_t(double[:, ::1] refl, double[::1] x,
                     int nvar, int nw) noexcept:
    """x <- Q' x, i.e. apply H_{nw-1} ... H_0 in forward order."""
    cdef int k, i
    cdef double dot
    for k in range(nw):
        dot = 0.0
        for i in range(k, nvar):
            dot += refl[i, k] * x[i]
        dot *= 2.0
        for i in range(k, nvar):
            x[i] -= dot * refl[i, k]


cdef void _apply_q(double[:, ::1] refl, double[::1] x,
                   int nvar, int nw) noexcept:
    """x <- Q x, i.e. apply H_0 ... H_{nw-1} in reverse order."""
    cdef int k, i
    cdef double dot
    for k in range(nw - 1, -1, -1):
        dot = 0.0
        for i in range(k, nvar):
            dot += refl[i, k] * x[i]
        dot *= 2.0
        for i in range(k, nvar):
            x[i] -= dot * refl[i, k]


cdef int _cholesky_solve(double[:, ::1] h, double[::1] rhs, double[::1] y,
                         int nn) noexcept:
    """Solve h y = rhs for symmetric positive definite h (in-place factor).
    Returns nonzero when a pivot fails, signalling a broken invariant."""
    cdef int i, j, k
    cdef double s
    for i in range(nn):
        for j in range(i, nn):
            s = h[i, j]
            for k in range(i):
                s -= h[i, k] * h[j, k]
            if i == j:
                if s <= 0.0:
                    return 1
                h[i, i] = sqrt(s)
            else:
                h[j, i] = s / h[i, i]
    for i in range(nn):
        s = rhs[i]
        for k in range(i):
            s -= h[i, k] * y[k]
        y[i] = s / h[i, i]
    for i in range(nn - 1, -1, -1):
        s = y[i]
        for k in range(i + 1, nn):
            s -= h[k, i] * y[k]
        y[i] = s / h[i, i]
    return 0


cdef void _back_substitute(double[:, ::1] r, double[::1] rhs, double[::1] lam,
                           int nw) noexcept:
    cdef int i, k
    cdef double s
    for i in range(nw - 1, -1, -1):
        s = rhs[i]
        for k in range(i + 1, nw):
            s -= r[i, k] * lam[k]
        lam[i] = s / r[i, i]


def solve_qp(glo, ghi, double kkt_tol=1e-10, max_iter=None):
    """Compiled drop-in for :func:`ivmopt._qp_py.solve_qp`."""
    glo = np.ascontiguousarray(glo, dtype=float)
    ghi = np.ascontiguousarray(ghi, dtype=float)
    if glo.ndim != 2 or glo.shape != ghi.shape:
        raise ValueError("gradient matrices must both have shape (m, n)")
    cdef double maxabs = max(np.abs(glo).max(initial=0.0),
                             np.abs(ghi).max(initial=0.0))
    cdef double theta = 1.0 if maxabs == 0.0 else 2.0 ** ceil(log2(maxabs))
    result = _solve_scaled(glo / theta, ghi / theta, kkt_tol,
                           0 if max_iter is None else int(max_iter))
    result.v *= theta
    result.u *= theta
    result.tau *= theta * theta
    return result


def _solve_scaled(glo, ghi, double kkt_tol, int max_iter_in):
    cdef int m = glo.shape[0]
    cdef int n = glo.shape[1]
    cdef int nvar = 2 * n + 1
    cdef int ncon = m + 3 * n
    cdef int max_iter = max_iter_in if max_iter_in > 0 else 100 * nvar

    a_np = _build_constraints(glo, ghi)
    cdef double[:, ::1] a = a_np

    z_np = np.zeros(nvar)
    cdef double[::1] z = z_np
    in_w_np = np.zeros(ncon, dtype=np.uint8)
    cdef unsigned char[::1] in_w = in_w_np
    cdef int j
    for j in range(n):
        in_w[m + n + j] = 1  # pair-plus rows pin every u_j at the origin
    in_w[0] = 1              # one objective row fixes tau

    lam_full_np = np.zeros(ncon)
    cdef double[::1] lam_full = lam_full_np

    # preallocated work buffers
    cdef int[::1] w = np.zeros(nvar, dtype=np.int32)
    cdef double[:, ::1] at = np.zeros((nvar, nvar))
    cdef double[:, ::1] refl = np.zeros((nvar, nvar))
    cdef double[:, ::1] zmat = np.zeros((nvar, nvar))
    cdef double[:, ::1] red_h = np.zeros((nvar, nvar))
    cdef double[::1] red_g = np.zeros(nvar)
    cdef double[::1] y = np.zeros(nvar)
    cdef double[::1] p = np.zeros(nvar)
    cdef double[::1] grad = np.zeros(nvar)
    cdef double[::1] work = np.zeros(nvar)
    cdef double[::1] lam = np.zeros(nvar)
    cdef double[::1] ap = np.zeros(ncon)
    cdef double[::1] az = np.zeros(ncon)
    cdef unsigned char[::1] excluded = np.zeros(ncon, dtype=np.uint8)
    cdef int[::1] pins = np.zeros(n if n > 0 else 1, dtype=np.int32)

    cdef bint converged = False, have_step
    cdef int iterations = 0
    cdef int nw, nullity, i, k, c, idx, block, best, kk
    cdef double rmin, rmax, s, pmax, zmax, alpha, ratio, dtol, dep
    cdef double mtol, best_lam, lmax

    while iterations < max_iter:
        iterations += 1
        nw = 0
        for i in range(ncon):
            if in_w[i]:
                w[nw] = i
                nw += 1

        # QR of A_W' (columns are working-set rows)
        for i in range(nvar):
            for k in range(nw):
                at[i, k] = a[w[k], i]
        _householder_qr(at, refl, nvar, nw)
        rmin = -1.0
        rmax = 0.0
        kk = 0
        for k in range(nw):
            s = fabs(at[k, k])
            if s > rmax:
                rmax = s
            if rmin < 0.0 or s < rmin:
                rmin = s
                kk = k
        if nw > 0 and rmin <= 1e-12 * (1.0 if rmax < 1.0 else rmax):
            # defensive: working set lost rank; drop the offending row
            in_w[w[kk]] = 0
            continue
        nullity = nvar - nw

        grad[2 * n] = 1.0
        for i in range(n):
            grad[i] = z[i]
        for i in range(n, 2 * n):
            grad[i] = 0.0

        pmax = 0.0
        if nullity > 0:
            # null-space columns Z = Q e_{nw+i}, formed on demand
            for k in range(nullity):
                for c in range(nvar):
                    work[c] = 0.0
                work[nw + k] = 1.0
                _apply_q(refl, work, nvar, nw)
                for c in range(nvar):
                    zmat[c, k] = work[c]
            # reduced Hessian Zv'Zv (H only has curvature in the v block)
            for i in range(nullity):
                for k in range(i, nullity):
                    s = 0.0
                    for c in range(n):
                        s += zmat[c, i] * zmat[c, k]
                    red_h[i, k] = s
                    red_h[k, i] = s
            # reduced gradient from one transposed application
            for c in range(nvar):
                work[c] = grad[c]
            _apply_q_t(refl, work, nvar, nw)
            for i in range(nullity):
                red_g[i] = -work[nw + i]
            if _cholesky_solve(red_h, red_g, y, nullity):
                break  # reduced Hessian singular: invariant broken
            for c in range(nvar):
                s = 0.0
                for i in range(nullity):
                    s += zmat[c, i] * y[i]
                p[c] = s
                if fabs(s) > pmax:
                    pmax = fabs(s)

        zmax = 0.0
        for c in range(nvar):
            if fabs(z[c]) > zmax:
                zmax = fabs(z[c])

        have_step = nullity > 0 and pmax > 1e-11 * (1.0 + zmax)
        if have_step:
            for i in range(ncon):
                s = 0.0
                for c in range(nvar):
                    s += a[i, c] * p[c]
                ap[i] = s
                s = 0.0
                for c in range(nvar):
                    s += a[i, c] * z[c]
                az[i] = s
            dtol = 1e-12 * (1.0 if pmax < 1.0 else pmax)
            for i in range(ncon):
                excluded[i] = 0
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
                dep = 0.0
                for k in range(nullity):
                    s = 0.0
                    for c in range(nvar):
                        s += zmat[c, k] * a[block, c]
                    if fabs(s) > dep:
                        dep = fabs(s)
                if dep <= 1e-9:
                    excluded[block] = 1
                    continue
                break
            for c in range(nvar):
                z[c] = z[c] + alpha * p[c]
            if block >= 0:
                in_w[block] = 1
                continue
            for i in range(n):
                grad[i] = z[i]  # full unblocked step: z is the W-minimizer

        # multipliers at the working-set minimizer: A_W' lam = -grad
        for c in range(nvar):
            work[c] = grad[c]
        _apply_q_t(refl, work, nvar, nw)
        for i in range(nw):
            work[i] = -work[i]
        _back_substitute(at, work, lam, nw)
        for i in range(ncon):
            lam_full[i] = 0.0
        for k in range(nw):
            lam_full[w[k]] = lam[k]

        # removal candidate: sole pins of a u coordinate are never dropped
        lmax = 0.0
        for k in range(nw):
            if fabs(lam[k]) > lmax:
                lmax = fabs(lam[k])
        mtol = 1e-11 * (1.0 + lmax)
        for j in range(n):
            pins[j] = 0
        for k in range(nw):
            idx = w[k]
            if idx >= m:
                pins[(idx - m) % n] += 1
        best = -1
        best_lam = -mtol
        for k in range(nw):
            if lam[k] >= best_lam:
                continue
            idx = w[k]
            if idx >= m and pins[(idx - m) % n] < 2:
                continue
            best = idx
            best_lam = lam[k]
        if best < 0:
            converged = True
            break
        in_w[best] = 0

    # final residual, mirroring the pure kernel
    grad_np = np.zeros(nvar)
    grad_np[:n] = z_np[:n]
    grad_np[2 * n] = 1.0
    stat = grad_np + a_np.T @ lam_full_np
    az_np = a_np @ z_np
    in_w_bool = in_w_np.astype(bool)
    res_stat = np.abs(stat).max() / (1.0 + np.abs(grad_np).max())
    res_prim = max(0.0, az_np.max())
    res_act = np.abs(az_np[in_w_bool]).max(initial=0.0)
    res_dual = max(0.0, -lam_full_np.min()) / (1.0 + np.abs(lam_full_np).max())
    residual = max(res_stat, res_prim, res_act, res_dual)
    ok = bool(converged and residual <= kkt_tol)
    return QpResult(v=z_np[:n].copy(), u=z_np[n:2 * n].copy(),
                    tau=float(z_np[2 * n]), kkt_residual=float(residual),
                    iterations=iterations, converged=ok)
