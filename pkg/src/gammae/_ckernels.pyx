# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for semantics."""

from libc.math cimport exp, log, pow

from ._gk21 import WG, WGK, XGK

cdef double _xgk[11]
cdef double _wgk[11]
cdef double _wg[5]

for _j in range(11):
    _xgk[_j] = XGK[_j]
    _wgk[_j] = WGK[_j]
for _j in range(5):
    _wg[_j] = WG[_j]


def log_rising_sum(double a, double b, long n):
    """Return sum_{k=0}^{n-1} ln(a + k b) with Neumaier compensation."""
    cdef double s = 0.0, c = 0.0, t, v
    cdef long k
    for k in range(n):
        v = log(a + k * b)
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


cdef inline double _h(double u, double expo, double rate, double shift,
                      double alpha, double inv_alpha) nogil:
    if alpha == 1.0:
        return exp(expo * log(u) - rate * u - shift)
    return exp(expo * log(u) - rate * pow(u, inv_alpha) - shift) * inv_alpha


def gk21_power_exp(double lo, double hi, double power, double rate,
                   double shift, double alpha):
    cdef double half = 0.5 * (hi - lo)
    cdef double mid = 0.5 * (hi + lo)
    cdef double expo = (power + 1.0) / alpha - 1.0
    cdef double inv_alpha = 1.0 / alpha
    cdef double fc, fsum, dx
    cdef double resk, resg = 0.0
    cdef int j
    fc = _h(mid, expo, rate, shift, alpha, inv_alpha)
    resk = _wgk[10] * fc
    for j in range(10):
        dx = half * _xgk[j]
        fsum = (_h(mid - dx, expo, rate, shift, alpha, inv_alpha)
                + _h(mid + dx, expo, rate, shift, alpha, inv_alpha))
        resk += _wgk[j] * fsum
        if j % 2:
            resg += _wg[j // 2] * fsum
    return resk * half, resg * half
