# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled roof-search kernels; see ``_fallback.py`` for the reference."""

import numpy as np
from libc.math cimport cos, sin, fabs

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex cexp(double complex)
    double complex conj(double complex)
    double creal(double complex)

NAME = "cython"

cdef enum:
    MAXM = 12
    MAXN = 32


def n_params(int m):
    return 3 * m - 4


cdef inline void _rotate_real(double* v, const double* ang, int m) nogil:
    cdef int k
    cdef double c, s, lo, hi
    for k in range(1, m):
        c = cos(ang[k - 1])
        s = sin(ang[k - 1])
        lo = v[k - 1]
        hi = v[k]
        v[k - 1] = c * lo - s * hi
        v[k] = s * lo + c * hi


cdef inline void _rotate_cplx(double complex* v, const double* ang, int m) nogil:
    cdef int k
    cdef double c, s
    cdef double complex lo, hi
    for k in range(1, m):
        c = cos(ang[k - 1])
        s = sin(ang[k - 1])
        lo = v[k - 1]
        hi = v[k]
        v[k - 1] = c * lo - s * hi
        v[k] = s * lo + c * hi


cdef inline void _columns(const double* x, int m, double* col1, double complex* col2) nogil:
    cdef int j
    cdef double r = 1.0, mag
    for j in range(m):
        col1[j] = 0.0
        col2[j] = 0.0
    col1[0] = 1.0
    _rotate_real(col1, x, m)
    for j in range(m - 1):
        if j < m - 2:
            mag = r * cos(x[m - 1 + j])
            r = r * sin(x[m - 1 + j])
        else:
            mag = r
        col2[j + 1] = mag * cexp(1j * x[2 * m - 3 + j])
    _rotate_cplx(col2, x, m)


cdef struct Spec:
    int m
    int kind
    int degree
    double scale
    double complex coeffs[5]
    double complex amats[16]
    double sp
    double sq


cdef inline double _row_value(double complex alpha, double complex beta, const Spec* sp) nogil:
    cdef double w = creal(alpha * conj(alpha)) + creal(beta * conj(beta))
    cdef double complex f, apow, bpow, r00, r01, r10, r11, ab, ba
    cdef double aa, bb, val, det
    cdef int k, e
    if w < 1e-300:
        return 0.0
    if sp.kind == 0:
        f = 0
        apow = 1
        for k in range(sp.degree, -1, -1):
            bpow = 1
            for e in range(k):
                bpow = bpow * beta
            f = f + sp.coeffs[k] * apow * bpow
            apow = apow * alpha
        val = sp.scale * cabs(f)
        if sp.degree == 4:
            val = val / w
        return val
    aa = creal(alpha * conj(alpha))
    bb = creal(beta * conj(beta))
    ab = alpha * conj(beta)
    ba = conj(alpha) * beta
    r00 = aa * sp.amats[0] + ab * sp.amats[4] + ba * sp.amats[8] + bb * sp.amats[12]
    r01 = aa * sp.amats[1] + ab * sp.amats[5] + ba * sp.amats[9] + bb * sp.amats[13]
    r10 = aa * sp.amats[2] + ab * sp.amats[6] + ba * sp.amats[10] + bb * sp.amats[14]
    r11 = aa * sp.amats[3] + ab * sp.amats[7] + ba * sp.amats[11] + bb * sp.amats[15]
    det = creal(r00 * r11 - r01 * r10)
    return sp.scale * det / w


cdef double _objective(const double* x, const Spec* sp) nogil:
    cdef double col1[MAXM]
    cdef double complex col2[MAXM]
    cdef double total = 0.0
    cdef int row
    _columns(x, sp.m, col1, col2)
    for row in range(sp.m):
        total += _row_value(col1[row] * sp.sp + 0j, col2[row] * sp.sq, sp)
    return total


cdef Spec _make_spec(int m, int kind, int degree, double scale, coeffs, amats,
                     double sp, double sq) except *:
    cdef Spec s
    cdef int k
    if m < 2 or m > MAXM:
        raise ValueError("decomposition length out of range")
    s.m = m
    s.kind = kind
    s.degree = degree
    s.scale = scale
    for k in range(5):
        s.coeffs[k] = coeffs[k] if k < len(coeffs) else 0
    for k in range(16):
        s.amats[k] = amats[k] if k < len(amats) else 0
    s.sp = sp
    s.sq = sq
    return s


def isometry(x, int m):
    cdef double xs[MAXN]
    cdef double col1[MAXM]
    cdef double complex col2[MAXM]
    cdef int k
    for k in range(3 * m - 4):
        xs[k] = x[k]
    _columns(xs, m, col1, col2)
    out = np.empty((m, 2), dtype=complex)
    for k in range(m):
        out[k, 0] = col1[k]
        out[k, 1] = col2[k]
    return out


def objective(x, int m, int kind, int degree, double scale, coeffs, amats,
              double sp, double sq):
    cdef Spec s = _make_spec(m, kind, degree, scale, coeffs, amats, sp, sq)
    cdef double xs[MAXN]
    cdef int k
    for k in range(3 * m - 4):
        xs[k] = x[k]
    return _objective(xs, &s)


def nelder_mead(x0, double step, int m, int kind, int degree, double scale,
                coeffs, amats, double sp, double sq,
                double xatol, double fatol, long max_iters):
    cdef Spec s = _make_spec(m, kind, degree, scale, coeffs, amats, sp, sq)
    cdef int n = 3 * m - 4
    cdef double sim[MAXN + 1][MAXN]
    cdef double fs[MAXN + 1]
    cdef double cen[MAXN]
    cdef double xr[MAXN]
    cdef double xe[MAXN]
    cdef double xc[MAXN]
    cdef double tmpx[MAXN]
    cdef double fr, fe, fc, tmpf, xspread, fspread
    cdef long nev, it = 0
    cdef int i, j, k
    cdef bint converged = False
    cdef bint accepted

    for i in range(n + 1):
        for k in range(n):
            sim[i][k] = x0[k]
    with nogil:
        for i in range(n):
            sim[i + 1][i] += step
        for i in range(n + 1):
            fs[i] = _objective(sim[i], &s)
        nev = n + 1
        while True:
            for i in range(1, n + 1):
                j = i
                while j > 0 and fs[j] < fs[j - 1]:
                    tmpf = fs[j]; fs[j] = fs[j - 1]; fs[j - 1] = tmpf
                    for k in range(n):
                        tmpx[k] = sim[j][k]
                        sim[j][k] = sim[j - 1][k]
                        sim[j - 1][k] = tmpx[k]
                    j -= 1
            xspread = 0.0
            fspread = 0.0
            for i in range(1, n + 1):
                for k in range(n):
                    if fabs(sim[i][k] - sim[0][k]) > xspread:
                        xspread = fabs(sim[i][k] - sim[0][k])
                if fabs(fs[i] - fs[0]) > fspread:
                    fspread = fabs(fs[i] - fs[0])
            if xspread <= xatol and fspread <= fatol:
                converged = True
                break
            if it >= max_iters:
                break
            it += 1

            for k in range(n):
                cen[k] = 0.0
            for i in range(n):
                for k in range(n):
                    cen[k] += sim[i][k]
            for k in range(n):
                cen[k] = cen[k] / n
            for k in range(n):
                xr[k] = 2.0 * cen[k] - sim[n][k]
            fr = _objective(xr, &s)
            nev += 1
            if fr < fs[0]:
                for k in range(n):
                    xe[k] = 3.0 * cen[k] - 2.0 * sim[n][k]
                fe = _objective(xe, &s)
                nev += 1
                if fe < fr:
                    for k in range(n):
                        sim[n][k] = xe[k]
                    fs[n] = fe
                else:
                    for k in range(n):
                        sim[n][k] = xr[k]
                    fs[n] = fr
                continue
            if fr < fs[n - 1]:
                for k in range(n):
                    sim[n][k] = xr[k]
                fs[n] = fr
                continue
            accepted = False
            if fr < fs[n]:
                for k in range(n):
                    xc[k] = cen[k] + 0.5 * (xr[k] - cen[k])
                fc = _objective(xc, &s)
                nev += 1
                if fc <= fr:
                    accepted = True
            else:
                for k in range(n):
                    xc[k] = cen[k] + 0.5 * (sim[n][k] - cen[k])
                fc = _objective(xc, &s)
                nev += 1
                if fc < fs[n]:
                    accepted = True
            if accepted:
                for k in range(n):
                    sim[n][k] = xc[k]
                fs[n] = fc
                continue
            for i in range(1, n + 1):
                for k in range(n):
                    sim[i][k] = sim[0][k] + 0.5 * (sim[i][k] - sim[0][k])
                fs[i] = _objective(sim[i], &s)
                nev += 1

    xbest = np.empty(n)
    for k in range(n):
        xbest[k] = sim[0][k]
    return xbest, fs[0], nev, it, bool(converged)
