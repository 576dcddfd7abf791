# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled invariant and flow-direction kernels (scalar loops over 3x3 data)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, asin, acos, cos, sin, fabs, M_PI

from .errors import SingularGradientError

cnp.import_array()

NAME = "cython"

cdef double FLOOR_REL = 1e-10
cdef double SIXTH_PI = M_PI / 6.0


cdef inline double _clamp(double x) nogil:
    if x > 1.0:
        return 1.0
    if x < -1.0:
        return -1.0
    return x


cdef void _split(double[:, ::1] a, double[3][3] dsym, double[3][3] skew, double* tr) nogil:
    cdef int i, j
    cdef double t = a[0, 0] + a[1, 1] + a[2, 2]
    for i in range(3):
        for j in range(3):
            dsym[i][j] = 0.5 * (a[i, j] + a[j, i])
            skew[i][j] = 0.5 * (a[i, j] - a[j, i])
        dsym[i][i] -= t / 3.0
    tr[0] = t


cdef double _sq(double[3][3] a) nogil:
    cdef int i, j
    cdef double acc = 0.0
    for i in range(3):
        for j in range(3):
            acc += a[i][j] * a[i][j]
    return acc


cdef double _det(double[3][3] a) nogil:
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


cdef double _floor(double[:, ::1] sigma) nogil:
    cdef int i, j
    cdef double acc = 0.0
    for i in range(3):
        for j in range(3):
            acc += sigma[i, j] * sigma[i, j]
    acc = sqrt(acc)
    return FLOOR_REL * (acc if acc > 1.0 else 1.0)


cdef double _q2(double[3][3] s_sym, double[3][3] s_skw, double[3][3] m_sym, double[3][3] m_skw,
                double tr_mu, double G, double Gc, double B, double Bc, double Kc) nogil:
    return 1.5 * (_sq(s_sym) + (G / Gc) * _sq(s_skw) + (G / B) * _sq(m_sym)
                  + (G / Bc) * _sq(m_skw) + (2.0 * G / Kc) * tr_mu * tr_mu / 9.0)


def _c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def invariants(sigma, mu, moduli):
    """Return ``(p, q, q_s, theta)``."""
    cdef double[:, ::1] sv = _c(sigma)
    cdef double[:, ::1] mv = _c(mu)
    cdef double G, Gc, B, Bc, Kc
    G, Gc, B, Bc, Kc = moduli
    cdef double s_sym[3][3]
    cdef double s_skw[3][3]
    cdef double m_sym[3][3]
    cdef double m_skw[3][3]
    cdef double tr_s, tr_m, q, qs, x, theta = 0.0
    _split(sv, s_sym, s_skw, &tr_s)
    _split(mv, m_sym, m_skw, &tr_m)
    q2 = _q2(s_sym, s_skw, m_sym, m_skw, tr_m, G, Gc, B, Bc, Kc)
    q = sqrt(q2) if q2 > 0.0 else 0.0
    qs = sqrt(1.5 * _sq(s_sym))
    if qs > _floor(sv):
        x = _clamp(13.5 * _det(s_sym) / (qs * qs * qs))
        theta = asin(x) / 3.0
    return tr_s / 3.0, q, qs, theta


def surface(sigma, mu, moduli, shape, double corner_tol=1e-9):
    """Return ``(q Gamma + M p, d/dsigma, d/dmu)``; raises when q vanishes."""
    cdef double[:, ::1] sv = _c(sigma)
    cdef double[:, ::1] mv = _c(mu)
    cdef double G, Gc, B, Bc, Kc, alpha, beta, gamma, M
    G, Gc, B, Bc, Kc = moduli
    alpha, beta, gamma, M = shape
    cdef double s_sym[3][3]
    cdef double s_skw[3][3]
    cdef double m_sym[3][3]
    cdef double m_skw[3][3]
    cdef double cof[3][3]
    cdef double tr_s, tr_m, q, q2, qs, x = 0.0, theta = 0.0, psi, gam, gp, ratio, dets, tr_cof
    cdef double a, b, c_lode, fl
    cdef bint has_lode = False
    cdef int i, j

    _split(sv, s_sym, s_skw, &tr_s)
    _split(mv, m_sym, m_skw, &tr_m)
    q2 = _q2(s_sym, s_skw, m_sym, m_skw, tr_m, G, Gc, B, Bc, Kc)
    q = sqrt(q2) if q2 > 0.0 else 0.0
    fl = _floor(sv)
    if q <= fl:
        raise SingularGradientError("q vanishes; gradient undefined")
    qs = sqrt(1.5 * _sq(s_sym))
    dets = 0.0
    if qs > fl:
        has_lode = True
        dets = _det(s_sym)
        x = _clamp(13.5 * dets / (qs * qs * qs))
        theta = asin(x) / 3.0

    psi = acos(_clamp(beta * sin(3.0 * theta))) / 3.0 - gamma * SIXTH_PI
    gam = alpha * cos(psi)

    d_sigma_np = np.empty((3, 3))
    d_mu_np = np.empty((3, 3))
    cdef double[:, ::1] ds = d_sigma_np
    cdef double[:, ::1] dm = d_mu_np

    a = gam * 1.5 / q
    b = gam * 1.5 / q * (G / Gc)
    for i in range(3):
        for j in range(3):
            ds[i, j] = a * s_sym[i][j] + b * s_skw[i][j]
        ds[i, i] += M / 3.0

    if beta > 0.0 and has_lode and fabs(x) <= 1.0 - corner_tol:
        if beta == 1.0:
            ratio = 1.0
        else:
            ratio = cos(3.0 * theta) / sqrt(1.0 - (beta * sin(3.0 * theta)) ** 2)
        gp = alpha * sin(psi) * beta * ratio
        # cofactor of s_sym (symmetric), then its deviator
        cof[0][0] = s_sym[1][1] * s_sym[2][2] - s_sym[1][2] * s_sym[2][1]
        cof[0][1] = s_sym[1][2] * s_sym[2][0] - s_sym[1][0] * s_sym[2][2]
        cof[0][2] = s_sym[1][0] * s_sym[2][1] - s_sym[1][1] * s_sym[2][0]
        cof[1][0] = s_sym[0][2] * s_sym[2][1] - s_sym[0][1] * s_sym[2][2]
        cof[1][1] = s_sym[0][0] * s_sym[2][2] - s_sym[0][2] * s_sym[2][0]
        cof[1][2] = s_sym[0][1] * s_sym[2][0] - s_sym[0][0] * s_sym[2][1]
        cof[2][0] = s_sym[0][1] * s_sym[1][2] - s_sym[0][2] * s_sym[1][1]
        cof[2][1] = s_sym[0][2] * s_sym[1][0] - s_sym[0][0] * s_sym[1][2]
        cof[2][2] = s_sym[0][0] * s_sym[1][1] - s_sym[0][1] * s_sym[1][0]
        tr_cof = (cof[0][0] + cof[1][1] + cof[2][2]) / 3.0
        c_lode = q * gp * 13.5 / (3.0 * sqrt(1.0 - x * x))
        for i in range(3):
            cof[i][i] -= tr_cof
            for j in range(3):
                ds[i, j] += c_lode * (cof[i][j] / (qs * qs * qs) - 4.5 * dets * s_sym[i][j] / (qs * qs * qs * qs * qs))

    a = gam * 1.5 / q * (G / B)
    b = gam * 1.5 / q * (G / Bc)
    for i in range(3):
        for j in range(3):
            dm[i, j] = a * m_sym[i][j] + b * m_skw[i][j]
        dm[i, i] += gam * G * tr_m / (3.0 * Kc * q)

    return q * gam + M * tr_s / 3.0, d_sigma_np, d_mu_np
