# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled rate-curve kernels; same contracts as ``purepy``."""

from libc.math cimport log2, sqrt, NAN

import numpy as np


cdef inline double _split_u(double t, double p, double P, double a, double b,
                            double alpha) nogil:
    cdef double big_d, s, delta, sq, den, ratio, one_minus, u
    if a == 0.0 or b == 0.0:
        return 1.0
    big_d = (1.0 - p) + a * a * P
    s = sqrt(1.0 - alpha) * (1.0 - p)
    delta = (1.0 - alpha) * (1.0 - p) * (1.0 - p) + P * b * b * t * big_d
    sq = sqrt(delta)
    den = b * sqrt(t) * big_d
    ratio = a * (sq - s) / den
    one_minus = (a * s + (1.0 - p) * (b * b * t * big_d
                 - a * a * (1.0 - alpha) * (1.0 - p)) / (den + a * sq)) / den
    u = one_minus * (1.0 + ratio)
    if u < 0.0:
        u = 0.0
    elif u > 1.0:
        u = 1.0
    return u


def siso_power_split_curve(t, double p, double P, double a, double b, double alpha):
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty_like(t)
    cdef double[::1] tv = t
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = tv.shape[0]
    with nogil:
        for i in range(n):
            if tv[i] > 0.0:
                ov[i] = _split_u(tv[i], p, P, a, b, alpha)
            else:
                ov[i] = NAN
    return out


def siso_total_rate_curve(t, double p, double P, double g24, double a, double b,
                          double alpha):
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty_like(t)
    cdef double[::1] tv = t
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = tv.shape[0]
    cdef double rate, u
    cdef bint state2 = not (p >= 1.0 or alpha >= 1.0 or P == 0.0)
    with nogil:
        for i in range(n):
            rate = 0.0
            if p > 0.0:
                rate = p * log2(1.0 + g24 * P * (1.0 - tv[i]) / p)
            if state2 and tv[i] > 0.0:
                u = _split_u(tv[i], p, P, a, b, alpha)
                rate += (1.0 - p) * (1.0 - alpha) * log2(
                    1.0 + g24 * P * tv[i] * u / ((1.0 - p) * (1.0 - alpha)))
            ov[i] = rate
    return out


def two_state_log_curve(t, double p, double c1, double w, double c2):
    t = np.ascontiguousarray(t, dtype=np.float64)
    out = np.empty_like(t)
    cdef double[::1] tv = t
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = tv.shape[0]
    cdef double rate
    cdef bint state2 = p < 1.0 and w > 0.0 and c2 > 0.0
    with nogil:
        for i in range(n):
            rate = 0.0
            if p > 0.0:
                rate = p * log2(1.0 + c1 * (1.0 - tv[i]))
            if state2:
                rate += (1.0 - p) * w * log2(1.0 + c2 * tv[i])
            ov[i] = rate
    return out


def waterfill_rate_curve(lam_sq, budgets):
    budgets = np.ascontiguousarray(budgets, dtype=np.float64)
    lam_sq = np.asarray(lam_sq, dtype=np.float64)
    pos = np.sort(lam_sq[lam_sq > 0.0])[::-1]
    out = np.empty_like(budgets)
    cdef double[::1] bv = budgets
    cdef double[::1] ov = out
    cdef Py_ssize_t i, k, n = bv.shape[0], m = pos.size
    if m == 0:
        out[:] = 0.0
        return out
    inv_arr = np.ascontiguousarray(1.0 / pos)
    csum_arr = np.cumsum(inv_arr)
    logsum_arr = np.cumsum(np.log2(inv_arr))
    cdef double[::1] inv = inv_arr
    cdef double[::1] csum = csum_arr
    cdef double[::1] logsum = logsum_arr
    cdef double mu
    with nogil:
        for i in range(n):
            k = 1
            # grow the active set while the next inverse gain sits under water
            while k < m and bv[i] > k * inv[k] - csum[k - 1]:
                k += 1
            mu = (bv[i] + csum[k - 1]) / k
            ov[i] = k * log2(mu) - logsum[k - 1]
    return out
