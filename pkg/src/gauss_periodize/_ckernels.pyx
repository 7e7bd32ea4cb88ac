# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_pykernels`` for the reference semantics."""

import numpy as np

from libc.math cimport cos, sin, exp, fabs, M_PI

cdef double _SPLITTER = 134217729.0
cdef double _HALF_PI = 0.5 * M_PI


cdef inline void _two_prod(double a, double b, double* p, double* err) noexcept nogil:
    cdef double c, ah, al, bh, bl
    p[0] = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    err[0] = ((ah * bh - p[0]) + ah * bl + al * bh) + al * bl


cdef inline void _two_sum(double a, double b, double* s, double* err) noexcept nogil:
    cdef double bb
    s[0] = a + b
    bb = s[0] - a
    err[0] = (a - (s[0] - bb)) + (b - bb)


def clenshaw_cosine(coeffs, theta):
    cdef const double[::1] a = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    out_arr = np.empty(th.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k, n = a.shape[0]
    cdef double half, s, c, u, sign, b, d
    with nogil:
        for i in range(th.shape[0]):
            half = 0.5 * th[i]
            s = sin(half)
            c = cos(half)
            if fabs(th[i]) <= _HALF_PI:
                u = -4.0 * (s * s)
                sign = 1.0
            else:
                u = 4.0 * (c * c)
                sign = -1.0
            b = 0.0
            d = 0.0
            for k in range(n - 1, 0, -1):
                d = a[k] + u * b + sign * d
                b = sign * b + d
            out[i] = 0.5 * a[0] + sign * d + 0.5 * u * b
    return out_arr


def compensated_cosine(coeffs, theta):
    cdef const double[::1] a = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef const double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    out_arr = np.empty(th.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k, n = a.shape[0]
    cdef double total, comp, err, p, e, cn, term, term_err
    with nogil:
        for i in range(th.shape[0]):
            total = -0.5 * a[0]
            comp = 0.0
            _two_sum(total, a[0], &total, &err)
            comp += err
            for k in range(1, n):
                _two_prod(<double>k, th[i], &p, &e)
                cn = cos(p) - sin(p) * e
                _two_prod(a[k], cn, &term, &term_err)
                _two_sum(total, term, &total, &err)
                comp += err + term_err
            out[i] = total + comp
    return out_arr


def periodized_gaussian(t, double tau_m, Py_ssize_t images):
    cdef const double[::1] tt = np.ascontiguousarray(t, dtype=np.float64)
    out_arr = np.empty(tt.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double h, kt, zp, zm, acc
    with nogil:
        for i in range(tt.shape[0]):
            h = 0.5 * tt[i]
            acc = 0.0
            for k in range(images, 0, -1):
                kt = k * tau_m
                zp = h + kt
                zm = h - kt
                acc = acc + (exp(-(zp * zp)) + exp(-(zm * zm)))
            out[i] = acc + exp(-(h * h))
    return out_arr
