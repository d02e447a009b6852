# cython: language_level=3
"""Compiled episode kernels; draw-for-draw twin of ``_pykernels``."""
import numpy as np

cimport numpy as cnp
from libc.math cimport exp, expm1, floor, log, log1p
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t STREAM = 0xD1B54A32D192ED03ULL
cdef double INV53 = 1.0 / 9007199254740992.0

cdef int DRAW_ARRIVAL = 0
cdef int DRAW_BINOMIAL = 1
cdef int DRAW_FIRST_BIT = 2
cdef int MAX_INVERSION_BITS = 1000


cdef inline uint64_t mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double uniform(uint64_t key, uint64_t draw) noexcept nogil:
    return <double>(mix(key + (draw + 1) * STREAM) >> 11) * INV53


cdef inline int64_t binomial_inversion(double u, int64_t n, double log_q) noexcept nogil:
    cdef double p = -expm1(log_q)
    cdef double pmf, cdf, ratio
    cdef int64_t k = 0
    cdef bint flip = p > 0.5
    if p <= 0.0:
        return 0
    if flip:
        pmf = exp(n * log(p))
        ratio = (1.0 - p) / p
    else:
        pmf = exp(n * log_q)
        ratio = p / (1.0 - p)
    cdf = pmf
    while u > cdf and k < n:
        pmf = pmf * ((<double>(n - k)) / (k + 1)) * ratio
        k += 1
        cdf = cdf + pmf
    return n - k if flip else k


cdef inline int64_t bitwise_errors(uint64_t key, int64_t n, int64_t m, double log_q1) noexcept nogil:
    cdef int64_t j, errors = 0
    cdef double mf = <double>m
    if log_q1 == 0.0:
        return 0
    for j in range(n):
        if log1p(-uniform(key, DRAW_FIRST_BIT + j)) / log_q1 < mf:
            errors += 1
    return errors


cdef inline uint64_t trial_key(uint64_t base, int64_t i) noexcept nogil:
    return mix(base + (<uint64_t>(i + 1)) * GOLDEN)


def proposed_batch(double lam, double start, double tau, double log_q1, int64_t n_bits,
                   bint bitwise, uint64_t seed, int64_t first, int64_t count):
    t_q_arr = np.empty(count, dtype=np.float64)
    act_arr = np.empty(count, dtype=np.bool_)
    m_arr = np.empty(count, dtype=np.int64)
    err_arr = np.empty(count, dtype=np.int64)
    cdef double[::1] t_q = t_q_arr
    cdef cnp.npy_bool[::1] act = act_arr
    cdef int64_t[::1] ms = m_arr
    cdef int64_t[::1] errs = err_arr
    cdef uint64_t base = mix(seed + GOLDEN)
    cdef uint64_t key
    cdef int64_t i, m
    cdef double t
    cdef bint per_bit = bitwise or n_bits > MAX_INVERSION_BITS
    with nogil:
        for i in range(count):
            key = trial_key(base, first + i)
            t = -log1p(-uniform(key, DRAW_ARRIVAL)) / lam
            t_q[i] = t
            if start < t:
                act[i] = True
                m = <int64_t>floor((t - start) / tau)
                ms[i] = m
                if per_bit:
                    errs[i] = bitwise_errors(key, n_bits, m, log_q1)
                else:
                    errs[i] = binomial_inversion(uniform(key, DRAW_BINOMIAL), n_bits, m * log_q1)
            else:
                act[i] = False
                ms[i] = 0
                errs[i] = 0
    return t_q_arr, act_arr, m_arr, err_arr


def baseline_batch(double lam, double tau0, uint64_t seed, int64_t first, int64_t count):
    t_q_arr = np.empty(count, dtype=np.float64)
    m_arr = np.empty(count, dtype=np.int64)
    cdef double[::1] t_q = t_q_arr
    cdef int64_t[::1] ms = m_arr
    cdef uint64_t base = mix(seed + GOLDEN)
    cdef int64_t i
    cdef double t
    with nogil:
        for i in range(count):
            t = -log1p(-uniform(trial_key(base, first + i), DRAW_ARRIVAL)) / lam
            t_q[i] = t
            ms[i] = <int64_t>floor(t / tau0)
    return t_q_arr, m_arr


def retention_batch(int64_t m, double log_q1, int64_t n_bits, uint64_t seed, int64_t first, int64_t count):
    err_arr = np.empty(count, dtype=np.int64)
    cdef int64_t[::1] errs = err_arr
    cdef uint64_t base = mix(seed + GOLDEN)
    cdef int64_t i
    with nogil:
        for i in range(count):
            errs[i] = bitwise_errors(trial_key(base, first + i), n_bits, m, log_q1)
    return err_arr
