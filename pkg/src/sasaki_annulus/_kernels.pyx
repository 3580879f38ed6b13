# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled discrete-profile kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sqrt, INFINITY, M_PI

cnp.import_array()

cdef double TWO_PI = 2.0 * M_PI

cdef enum:
    ST_CONVERGED = 0
    ST_MAX_ITERS = 1
    ST_STALLED = 2

CONVERGED = ST_CONVERGED
MAX_ITERS = ST_MAX_ITERS
STALLED = ST_STALLED


cdef void _segments(const double[::1] nodes, double[::1] da, double[::1] c2) noexcept nogil:
    cdef Py_ssize_t i, m = nodes.shape[0] - 1
    cdef double c
    for i in range(m):
        da[i] = nodes[i + 1] - nodes[i]
        c = cos(0.5 * (nodes[i + 1] + nodes[i]))
        c2[i] = c * c


cdef double _area(const double[::1] t, const double[::1] da, const double[::1] c2) noexcept nogil:
    cdef Py_ssize_t i, m = da.shape[0]
    cdef double s, acc = 0.0
    for i in range(m):
        s = (t[i + 1] - t[i]) / da[i]
        acc += da[i] * sqrt(1.0 + c2[i] * s * s)
    return TWO_PI * acc


cdef double _gradient(const double[::1] t, const double[::1] da, const double[::1] c2, double[::1] g) noexcept nogil:
    """Fill g (interior nodes) and return its squared norm."""
    cdef Py_ssize_t i, m = da.shape[0]
    cdef double s, q, q_prev = 0.0, norm2 = 0.0
    for i in range(m):
        s = (t[i + 1] - t[i]) / da[i]
        q = TWO_PI * c2[i] * s / sqrt(1.0 + c2[i] * s * s)
        if i > 0:
            g[i - 1] = q_prev - q
            norm2 += g[i - 1] * g[i - 1]
        q_prev = q
    return norm2


cdef double _change(const double[::1] t0, const double[::1] t1, const double[::1] da, const double[::1] c2) noexcept nogil:
    cdef Py_ssize_t i, m = da.shape[0]
    cdef double s0, s1, ds, r0, r1, acc = 0.0
    for i in range(m):
        s0 = (t0[i + 1] - t0[i]) / da[i]
        s1 = (t1[i + 1] - t1[i]) / da[i]
        # node-wise differences are exact; subtracting the slopes is not
        ds = ((t1[i + 1] - t0[i + 1]) - (t1[i] - t0[i])) / da[i]
        r0 = sqrt(1.0 + c2[i] * s0 * s0)
        r1 = sqrt(1.0 + c2[i] * s1 * s1)
        acc += da[i] * c2[i] * ds * (s1 + s0) / (r0 + r1)
    return TWO_PI * acc


def discrete_area(nodes, thetas):
    cdef const double[::1] x = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double[::1] t = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0] - 1
    da = np.empty(m)
    c2 = np.empty(m)
    _segments(x, da, c2)
    return _area(t, da, c2)


def first_integral(nodes, thetas):
    cdef const double[::1] x = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double[::1] t = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef Py_ssize_t i, m = x.shape[0] - 1
    cdef double[::1] da = np.empty(m)
    cdef double[::1] c2 = np.empty(m)
    out = np.empty(m)
    cdef double[::1] o = out
    cdef double s
    _segments(x, da, c2)
    for i in range(m):
        s = (t[i + 1] - t[i]) / da[i]
        o[i] = c2[i] * s / sqrt(1.0 + c2[i] * s * s)
    return out


def discrete_gradient(nodes, thetas):
    cdef const double[::1] x = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef const double[::1] t = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0] - 1
    da = np.empty(m)
    c2 = np.empty(m)
    g = np.empty(m - 1)
    _segments(x, da, c2)
    _gradient(t, da, c2, g)
    return g


def area_change(nodes, old, new):
    cdef const double[::1] x = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0] - 1
    da = np.empty(m)
    c2 = np.empty(m)
    _segments(x, da, c2)
    return _change(np.ascontiguousarray(old, dtype=np.float64),
                   np.ascontiguousarray(new, dtype=np.float64), da, c2)


def descend(nodes, thetas, long max_iters, double grad_tol, double armijo=1e-4,
            double step0=1.0, bint adaptive=True):
    cdef const double[::1] x = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef Py_ssize_t i, n = x.shape[0], m = n - 1
    cdef double[::1] da = np.empty(m)
    cdef double[::1] c2 = np.empty(m)
    cdef double[::1] g = np.empty(m - 1)
    t_arr = np.array(thetas, dtype=np.float64)
    trial_arr = t_arr.copy()
    cdef double[::1] t = t_arr
    cdef double[::1] trial = trial_arr
    cdef double step = step0, gn, change = 0.0, max_change = -INFINITY
    cdef long it = 0
    cdef int status = ST_MAX_ITERS
    cdef bint stalled

    _segments(x, da, c2)
    with nogil:
        gn = sqrt(_gradient(t, da, c2, g))
        while it < max_iters:
            if gn <= grad_tol:
                status = ST_CONVERGED
                break
            step = 2.0 * step if adaptive else step0
            stalled = False
            while True:
                for i in range(1, n - 1):
                    trial[i] = t[i] - step * g[i - 1]
                change = _change(t, trial, da, c2)
                if change <= -armijo * step * gn * gn:
                    break
                step *= 0.5
                if step < 1e-30:
                    stalled = True
                    break
            if stalled:
                status = ST_STALLED
                break
            for i in range(1, n - 1):
                t[i] = trial[i]
            if change > max_change:
                max_change = change
            it += 1
            gn = sqrt(_gradient(t, da, c2, g))
        else:
            if gn <= grad_tol:
                status = ST_CONVERGED
    return t_arr, it, gn, status, max_change
