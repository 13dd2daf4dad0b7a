"""Pure-Python roof-search kernels.

Reference implementation of the routines in ``_kernels.pyx``; the two follow
the same operation order so their trajectories agree to round-off.

Parameter layout for decomposition length m (n = 3m - 4 reals):
``x[0:m-1]`` hyperspherical angles of the real first isometry column,
``x[m-1:2m-3]`` hyperspherical angles of the second column's moduli (in the
orthogonal complement), ``x[2m-3:3m-4]`` the second column's phases.
"""

import cmath
import math

import numpy as np

NAME = "python"


def n_params(m):
    return 3 * m - 4


def _rotate_chain(v, angles, m):
    # apply G_1(a_0), ..., G_{m-1}(a_{m-2}); G_k rotates the plane (k-1, k)
    for k in range(1, m):
        c = math.cos(angles[k - 1])
        s = math.sin(angles[k - 1])
        lo = v[k - 1]
        hi = v[k]
        v[k - 1] = c * lo - s * hi
        v[k] = s * lo + c * hi


def _columns(x, m):
    col1 = [0.0] * m
    col1[0] = 1.0
    _rotate_chain(col1, x, m)
    col2 = [0j] * m
    r = 1.0
    for j in range(m - 1):
        if j < m - 2:
            mag = r * math.cos(x[m - 1 + j])
            r = r * math.sin(x[m - 1 + j])
        else:
            mag = r
        col2[j + 1] = mag * cmath.exp(1j * x[2 * m - 3 + j])
    _rotate_chain(col2, x, m)
    return col1, col2


def isometry(x, m):
    """m x 2 complex matrix with orthonormal columns built from ``x``."""
    col1, col2 = _columns([float(t) for t in x], m)
    return np.array([col1, col2], dtype=complex).T


def _row_value(alpha, beta, kind, degree, scale, coeffs, amats):
    w = (alpha * alpha.conjugate()).real + (beta * beta.conjugate()).real
    if w < 1e-300:
        return 0.0
    if kind == 0:
        f = 0j
        apow = 1 + 0j
        for k in range(degree, -1, -1):
            bpow = 1 + 0j
            for _ in range(k):
                bpow = bpow * beta
            f = f + coeffs[k] * apow * bpow
            apow = apow * alpha
        val = scale * abs(f)
        if degree == 4:
            val = val / w
        return val
    aa = (alpha * alpha.conjugate()).real
    bb = (beta * beta.conjugate()).real
    ab = alpha * beta.conjugate()
    ba = alpha.conjugate() * beta
    r00 = aa * amats[0] + ab * amats[4] + ba * amats[8] + bb * amats[12]
    r01 = aa * amats[1] + ab * amats[5] + ba * amats[9] + bb * amats[13]
    r10 = aa * amats[2] + ab * amats[6] + ba * amats[10] + bb * amats[14]
    r11 = aa * amats[3] + ab * amats[7] + ba * amats[11] + bb * amats[15]
    det = (r00 * r11 - r01 * r10).real
    return scale * det / w


def _objective(x, m, kind, degree, scale, coeffs, amats, sp, sq):
    col1, col2 = _columns(x, m)
    total = 0.0
    for row in range(m):
        total += _row_value(
            col1[row] * sp + 0j, col2[row] * sq, kind, degree, scale, coeffs, amats
        )
    return total


def objective(x, m, kind, degree, scale, coeffs, amats, sp, sq):
    """Ensemble-average measure of the decomposition encoded by ``x``."""
    return _objective(
        [float(t) for t in x], m, kind, degree, scale,
        [complex(c) for c in coeffs], [complex(a) for a in amats], sp, sq,
    )


def nelder_mead(x0, step, m, kind, degree, scale, coeffs, amats, sp, sq,
                xatol, fatol, max_iters):
    """Downhill simplex search from ``x0``.

    Returns ``(x_best, f_best, n_evals, n_iters, converged)``.
    """
    coeffs = [complex(c) for c in coeffs]
    amats = [complex(a) for a in amats]
    n = len(x0)

    def f(pt):
        return _objective(pt, m, kind, degree, scale, coeffs, amats, sp, sq)

    sim = [[float(t) for t in x0] for _ in range(n + 1)]
    for i in range(n):
        sim[i + 1][i] += step
    fs = [f(pt) for pt in sim]
    nev = n + 1
    converged = False
    it = 0
    while True:
        # insertion sort keeps ties in their current order
        for i in range(1, n + 1):
            j = i
            while j > 0 and fs[j] < fs[j - 1]:
                fs[j], fs[j - 1] = fs[j - 1], fs[j]
                sim[j], sim[j - 1] = sim[j - 1], sim[j]
                j -= 1
        xspread = 0.0
        fspread = 0.0
        for i in range(1, n + 1):
            for k in range(n):
                xspread = max(xspread, abs(sim[i][k] - sim[0][k]))
            fspread = max(fspread, abs(fs[i] - fs[0]))
        if xspread <= xatol and fspread <= fatol:
            converged = True
            break
        if it >= max_iters:
            break
        it += 1

        cen = [0.0] * n
        for i in range(n):
            for k in range(n):
                cen[k] += sim[i][k]
        cen = [c / n for c in cen]
        worst = sim[n]
        xr = [2.0 * cen[k] - worst[k] for k in range(n)]
        fr = f(xr)
        nev += 1
        if fr < fs[0]:
            xe = [3.0 * cen[k] - 2.0 * worst[k] for k in range(n)]
            fe = f(xe)
            nev += 1
            if fe < fr:
                sim[n], fs[n] = xe, fe
            else:
                sim[n], fs[n] = xr, fr
            continue
        if fr < fs[n - 1]:
            sim[n], fs[n] = xr, fr
            continue
        if fr < fs[n]:
            xc = [cen[k] + 0.5 * (xr[k] - cen[k]) for k in range(n)]
            fc = f(xc)
            nev += 1
            if fc <= fr:
                sim[n], fs[n] = xc, fc
                continue
        else:
            xc = [cen[k] + 0.5 * (worst[k] - cen[k]) for k in range(n)]
            fc = f(xc)
            nev += 1
            if fc < fs[n]:
                sim[n], fs[n] = xc, fc
                continue
        for i in range(1, n + 1):
            sim[i] = [sim[0][k] + 0.5 * (sim[i][k] - sim[0][k]) for k in range(n)]
            fs[i] = f(sim[i])
            nev += 1
    return np.array(sim[0]), fs[0], nev, it, converged
