# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: periodic filter-bank steps, bit packing, BSC flips.

Every routine here has a numpy twin in ``_fallback`` that must return
bit-identical results; the loop orders below are the contract.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint32_t, uint64_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def analysis_step(const double[::1] x, const double[::1] h, const double[::1] g):
    cdef Py_ssize_t n = x.shape[0], half = n // 2, taps = h.shape[0]
    cdef Py_ssize_t k, t, tt, wrap, idx
    a_arr = np.zeros(half, dtype=np.float64)
    d_arr = np.zeros(half, dtype=np.float64)
    cdef double[::1] a = a_arr
    cdef double[::1] d = d_arr
    with nogil:
        for t in range(taps):
            # 2k + tt < 2n, so the periodic index needs at most one subtraction
            tt = t % n
            wrap = (n - tt + 1) // 2
            for k in range(wrap):
                idx = 2 * k + tt
                a[k] = a[k] + h[t] * x[idx]
                d[k] = d[k] + g[t] * x[idx]
            for k in range(wrap, half):
                idx = 2 * k + tt - n
                a[k] = a[k] + h[t] * x[idx]
                d[k] = d[k] + g[t] * x[idx]
    return a_arr, d_arr


def synthesis_step(const double[::1] a, const double[::1] d,
                   const double[::1] h, const double[::1] g):
    cdef Py_ssize_t half = a.shape[0], n = 2 * half, taps = h.shape[0]
    cdef Py_ssize_t k, t, tt, wrap, idx
    x_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double tmp
    with nogil:
        for t in range(taps):
            tt = t % n
            wrap = (n - tt + 1) // 2
            for k in range(wrap):
                idx = 2 * k + tt
                tmp = a[k] * h[t] + d[k] * g[t]
                x[idx] = x[idx] + tmp
            for k in range(wrap, half):
                idx = 2 * k + tt - n
                tmp = a[k] * h[t] + d[k] * g[t]
                x[idx] = x[idx] + tmp
    return x_arr


def pack_codes(const uint32_t[::1] codes, int width):
    """LSB-first packing of the low `width` bits of each code."""
    cdef Py_ssize_t m = codes.shape[0], i, pos = 0
    cdef Py_ssize_t nbytes = (m * width + 7) // 8
    cdef uint64_t acc = 0, mask = (<uint64_t>1 << width) - 1
    cdef int nacc = 0
    out_arr = np.zeros(nbytes, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    with nogil:
        for i in range(m):
            acc |= (codes[i] & mask) << nacc
            nacc += width
            while nacc >= 8:
                out[pos] = <uint8_t>(acc & 0xFF)
                acc >>= 8
                nacc -= 8
                pos += 1
        if nacc > 0:
            out[pos] = <uint8_t>(acc & 0xFF)
    return out_arr.tobytes()


def unpack_codes(const uint8_t[::1] buf, Py_ssize_t count, int width):
    cdef Py_ssize_t i, pos = 0
    cdef uint64_t acc = 0, mask = (<uint64_t>1 << width) - 1
    cdef int nacc = 0
    if count * width > buf.shape[0] * 8:
        raise ValueError("buffer too short for requested codes")
    out_arr = np.zeros(count, dtype=np.uint32)
    cdef uint32_t[::1] out = out_arr
    with nogil:
        for i in range(count):
            while nacc < width:
                acc |= (<uint64_t>buf[pos]) << nacc
                pos += 1
                nacc += 8
            out[i] = <uint32_t>(acc & mask)
            acc >>= width
            nacc -= width
    return out_arr


def bsc_flip(const uint8_t[::1] buf, uint64_t seed, uint64_t threshold):
    """Flip bit i when splitmix64(seed + (i+1)*golden) < threshold."""
    cdef Py_ssize_t nbits = buf.shape[0] * 8, i
    cdef Py_ssize_t flips = 0
    out_arr = np.array(buf, dtype=np.uint8, copy=True)
    cdef uint8_t[::1] out = out_arr
    if threshold == 0:
        return out_arr.tobytes(), 0
    with nogil:
        for i in range(nbits):
            if _mix64(seed + (<uint64_t>(i + 1)) * GOLDEN) < threshold:
                out[i >> 3] ^= <uint8_t>(1 << (i & 7))
                flips += 1
    return out_arr.tobytes(), flips
