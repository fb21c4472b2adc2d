# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled streaming kernels; reference versions live in ``_kernels_py``."""
import numpy as np

ctypedef long long i64


def cascade_complex(double complex[:, :, ::1] mats, i64[:, ::1] delays, i64[:, ::1] offsets,
                    i64[:, ::1] heads, double complex[::1] buf, double complex[:, ::1] x,
                    double complex[:, ::1] out):
    cdef Py_ssize_t S = mats.shape[0], M = mats.shape[1], T = x.shape[0]
    cdef Py_ssize_t t, s, i, j, pos
    cdef i64 D
    cdef double complex acc, tmp
    cdef double complex[::1] v = np.empty(M, dtype=np.complex128)
    cdef double complex[::1] w = np.empty(M, dtype=np.complex128)
    cdef double complex[::1] swap
    for t in range(T):
        for i in range(M):
            v[i] = x[t, i]
        for s in range(S):
            for i in range(M):
                acc = 0
                for j in range(M):
                    acc = acc + mats[s, i, j] * v[j]
                w[i] = acc
            if s < S - 1:
                for i in range(M):
                    D = delays[s, i]
                    if D > 0:
                        pos = offsets[s, i] + heads[s, i]
                        tmp = buf[pos]
                        buf[pos] = w[i]
                        w[i] = tmp
                        heads[s, i] += 1
                        if heads[s, i] == D:
                            heads[s, i] = 0
            swap = v
            v = w
            w = swap
        for i in range(M):
            out[t, i] = v[i]


def cascade_int(i64[:, :, :, ::1] mats, i64[:, :, ::1] table, i64[:, ::1] delays,
                i64[:, ::1] offsets, i64[:, ::1] heads, i64[:, ::1] buf,
                i64[:, :, ::1] x, i64[:, :, ::1] out):
    cdef Py_ssize_t S = mats.shape[0], M = mats.shape[1], d = mats.shape[3]
    cdef Py_ssize_t T = x.shape[0]
    cdef Py_ssize_t t, s, i, j, p, q, r, pos
    cdef i64 D, a, ab, tmp
    cdef i64[:, ::1] v = np.empty((M, d), dtype=np.int64)
    cdef i64[:, ::1] w = np.empty((M, d), dtype=np.int64)
    cdef i64[:, ::1] swap
    for t in range(T):
        for i in range(M):
            for r in range(d):
                v[i, r] = x[t, i, r]
        for s in range(S):
            for i in range(M):
                for r in range(d):
                    w[i, r] = 0
                for j in range(M):
                    for p in range(d):
                        a = mats[s, i, j, p]
                        if a == 0:
                            continue
                        for q in range(d):
                            ab = a * v[j, q]
                            if ab == 0:
                                continue
                            for r in range(d):
                                w[i, r] += ab * table[p, q, r]
            if s < S - 1:
                for i in range(M):
                    D = delays[s, i]
                    if D > 0:
                        pos = offsets[s, i] + heads[s, i]
                        for r in range(d):
                            tmp = buf[pos, r]
                            buf[pos, r] = w[i, r]
                            w[i, r] = tmp
                        heads[s, i] += 1
                        if heads[s, i] == D:
                            heads[s, i] = 0
            swap = v
            v = w
            w = swap
        for i in range(M):
            for r in range(d):
                out[t, i, r] = v[i, r]


def direct_complex(double complex[:, ::1] taps, double complex[::1] x, double complex[:, ::1] out):
    cdef Py_ssize_t M = taps.shape[0], L = taps.shape[1], T = x.shape[0]
    cdef Py_ssize_t t, m, j, jmax
    cdef double complex acc
    for t in range(T):
        jmax = t + 1 if t + 1 < L else L
        for m in range(M):
            acc = 0
            for j in range(jmax):
                acc = acc + taps[m, j] * x[t - j]
            out[t, m] = acc
