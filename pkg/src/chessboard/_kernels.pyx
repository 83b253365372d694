# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Bessel series kernels over float64 arrays.

Both kernels take the *square* of the argument, ``s = z**2``, so they stay
analytic through ``s = 0`` and continue to ``s < 0`` (modified Bessel branch).
"""
import numpy as np

from libc.math cimport fabs, fmax

cdef int MAX_TERMS = 400
cdef double TERM_TOL = 1e-17


cdef inline double _series(double q, double term, double denom_shift) nogil:
    # sum_k (-q)^k * term_0 / prod_{i<=k} i*(i+shift)
    cdef double total = term
    cdef int k = 0
    cdef double kk
    while k < MAX_TERMS:
        k += 1
        kk = <double>k
        term *= -q / (kk * (kk + denom_shift))
        total += term
        if fabs(term) < TERM_TOL * fmax(1.0, fabs(total)):
            break
    return total


def j0_sq(s):
    """J0(sqrt(s)) elementwise."""
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=np.float64).ravel()
    out = np.empty(sv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = sv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _series(0.25 * sv[i], 1.0, 0.0)
    return out.reshape(np.shape(s))


def j1oz_sq(s):
    """J1(sqrt(s)) / sqrt(s) elementwise, equal to 1/2 at s = 0."""
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=np.float64).ravel()
    out = np.empty(sv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = sv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _series(0.25 * sv[i], 0.5, 1.0)
    return out.reshape(np.shape(s))


def bessel_pair_sq(s):
    """Both ``j0_sq(s)`` and ``j1oz_sq(s)`` in one pass."""
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=np.float64).ravel()
    a = np.empty(sv.shape[0], dtype=np.float64)
    b = np.empty(sv.shape[0], dtype=np.float64)
    cdef double[::1] av = a
    cdef double[::1] bv = b
    cdef Py_ssize_t i, n = sv.shape[0]
    cdef double q
    with nogil:
        for i in range(n):
            q = 0.25 * sv[i]
            av[i] = _series(q, 1.0, 0.0)
            bv[i] = _series(q, 0.5, 1.0)
    shape = np.shape(s)
    return a.reshape(shape), b.reshape(shape)
