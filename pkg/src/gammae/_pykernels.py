"""Pure-Python implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable.  Signatures
and semantics match ``_ckernels.pyx`` exactly.
"""

import math

from ._gk21 import WG, WGK, XGK


def log_rising_sum(a, b, n):
    """Return sum_{k=0}^{n-1} ln(a + k b), correctly rounded via fsum."""
    log = math.log
    return math.fsum(log(a + k * b) for k in range(n))


def gk21_power_exp(lo, hi, power, rate, shift, alpha):
    """Gauss-Kronrod (K21, G10) sums on [lo, hi] for the integrand

        h(u) = exp(((power + 1)/alpha - 1) ln u - rate u**(1/alpha) - shift) / alpha

    which is exp(power ln y - rate y - shift) after y = u**(1/alpha).
    ``alpha == 1`` is the untransformed integrand.
    """
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    expo = (power + 1.0) / alpha - 1.0
    inv_alpha = 1.0 / alpha
    log, exp = math.log, math.exp

    def h(u):
        if alpha == 1.0:
            return exp(expo * log(u) - rate * u - shift)
        return exp(expo * log(u) - rate * u**inv_alpha - shift) * inv_alpha

    fc = h(mid)
    resk = WGK[10] * fc
    resg = 0.0
    for j in range(10):
        dx = half * XGK[j]
        fsum = h(mid - dx) + h(mid + dx)
        resk += WGK[j] * fsum
        if j % 2:
            resg += WG[j // 2] * fsum
    return resk * half, resg * half
