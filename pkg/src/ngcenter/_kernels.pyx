# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loop of the center solver: batched quartic residuals.

Complex products are spelled out on (re, im) pairs so the inner loops stay in
registers over contiguous memory.
"""
import numpy as np
cimport numpy as cnp

ctypedef double complex cplx


def half4_residual_batch(cplx[:, ::1] X, cplx[:, ::1] bsub, cplx[:, ::1] bghmt,
                         cplx[:, ::1] conj_a_sub, cplx c2inv, cplx c2d):
    cdef Py_ssize_t B = X.shape[0], n = X.shape[1]
    cdef Py_ssize_t s, g, h, k
    cdef double ar, ai, wr, wi, br, bi, tr, ti, ur, ui
    out = np.empty((B, n * n), dtype=np.complex128)
    cdef cplx[:, ::1] R = out
    cdef double[:, ::1] bT = np.ascontiguousarray(np.asarray(bsub).T).view(np.float64)
    cdef double[::1] w = np.empty(2 * n)
    cdef double[:, ::1] K = np.ascontiguousarray(c2inv * np.asarray(bghmt) * np.asarray(conj_a_sub)).view(np.float64)
    cdef double[:, ::1] Xr = np.asarray(X).view(np.float64)
    cdef double[:, ::1] A = np.empty((n, 2 * n))
    for s in range(B):
        for g in range(n):
            for k in range(n):
                # w[k] = X[s, k] * bsub[k, g]
                ar = Xr[s, 2 * k]; ai = Xr[s, 2 * k + 1]
                br = bT[g, 2 * k]; bi = bT[g, 2 * k + 1]
                w[2 * k] = ar * br - ai * bi
                w[2 * k + 1] = ar * bi + ai * br
            # the quadratic sum is symmetric in (g, h)
            for h in range(g, n):
                wr = 0.0; wi = 0.0
                for k in range(n):
                    br = bT[h, 2 * k]; bi = bT[h, 2 * k + 1]
                    wr = wr + w[2 * k] * br - w[2 * k + 1] * bi
                    wi = wi + w[2 * k] * bi + w[2 * k + 1] * br
                A[g, 2 * h] = wr; A[g, 2 * h + 1] = wi
                A[h, 2 * g] = wr; A[h, 2 * g + 1] = wi
        for g in range(n):
            for h in range(n):
                # t = K[g, h] * X[s, g] * X[s, h]
                ar = Xr[s, 2 * g] * Xr[s, 2 * h] - Xr[s, 2 * g + 1] * Xr[s, 2 * h + 1]
                ai = Xr[s, 2 * g] * Xr[s, 2 * h + 1] + Xr[s, 2 * g + 1] * Xr[s, 2 * h]
                ur = K[g, 2 * h]; ui = K[g, 2 * h + 1]
                tr = ur * ar - ui * ai
                ti = ur * ai + ui * ar
                R[s, g * n + h] = (A[g, 2 * h] - tr + c2d.real) + 1j * (A[g, 2 * h + 1] - ti + c2d.imag)
    return out
