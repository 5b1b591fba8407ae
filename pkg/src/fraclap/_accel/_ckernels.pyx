# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels.py`` for the reference semantics."""

from libc.math cimport lgamma, log, log1p, exp, fabs, floor, pow

cdef double[8] _STIRLING
_STIRLING[0] = 1.0 / 12.0
_STIRLING[1] = -1.0 / 360.0
_STIRLING[2] = 1.0 / 1260.0
_STIRLING[3] = -1.0 / 1680.0
_STIRLING[4] = 1.0 / 1188.0
_STIRLING[5] = -691.0 / 360360.0
_STIRLING[6] = 1.0 / 156.0
_STIRLING[7] = -3617.0 / 122400.0

cdef double STIRLING_MIN = 10.0


cdef inline double _gamma_sign(double x) nogil:
    if x > 0.0:
        return 1.0
    if (<long long> floor(-x)) % 2 == 0:
        return -1.0
    return 1.0


cdef inline double _stirling_tail(double z) nogil:
    cdef double zi2 = 1.0 / (z * z)
    cdef double acc = 0.0
    cdef int k
    for k in range(7, -1, -1):
        acc = acc * zi2 + _STIRLING[k]
    return acc / z


cdef inline double _lgr(double x, double y, double* sign) nogil:
    cdef double d, val
    if x >= STIRLING_MIN and y >= STIRLING_MIN:
        d = x - y
        val = (x - 0.5) * log1p(d / y) + d * (log(y) - 1.0)
        val += _stirling_tail(x) - _stirling_tail(y)
        sign[0] = 1.0
        return val
    sign[0] = _gamma_sign(x) * _gamma_sign(y)
    return lgamma(x) - lgamma(y)


def log_gamma_ratio(double x, double y):
    if x <= 0.0 and x == floor(x):
        raise ValueError(f"Gamma has a pole at {x!r}")
    if y <= 0.0 and y == floor(y):
        raise ValueError(f"Gamma has a pole at {y!r}")
    cdef double s
    cdef double v = _lgr(x, y, &s)
    return v, s


def image_sum(double alpha, long p, long n_chain, long n_start, long n_stop):
    cdef double a = 0.5 * alpha
    cdef double acc = 0.0
    cdef double m, s, v
    cdef long n
    if n_stop <= n_start:
        return 0.0
    with nogil:
        for n in range(n_stop - 1, n_start - 1, -1):
            m = <double> (p + n * n_chain)
            v = _lgr(m - a, m + a + 1.0, &s)
            acc += s * exp(v)
            m = <double> (n * n_chain - p)
            v = _lgr(m - a, m + a + 1.0, &s)
            acc += s * exp(v)
    return acc


def circulant_matvec(const double[::1] row, const double[::1] u):
    cdef Py_ssize_t n = row.shape[0]
    if u.shape[0] != n:
        raise ValueError("dimension mismatch")
    out = bytearray(8 * n)
    cdef double[::1] res = memoryview(out).cast("d")
    cdef Py_ssize_t i, j, k
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            k = (n - i) % n
            for j in range(n):
                acc += row[k] * u[j]
                k += 1
                if k == n:
                    k = 0
            res[i] = acc
    return res


def abs_power_sum(double x, double beta, long n_lo, long n_hi):
    cdef double acc = 0.0
    cdef long n
    cdef long lo = n_lo
    cdef long hi = n_hi
    with nogil:
        # largest |n| first
        while lo <= hi:
            if -lo >= hi:
                acc += pow(fabs(x + lo), -beta)
                lo += 1
            else:
                acc += pow(fabs(x + hi), -beta)
                hi -= 1
    return acc
