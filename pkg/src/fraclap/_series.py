"""Asymptotic expansion of the gamma ratio behind the element tails.

For large ``m``::

    Gamma(m - a) / Gamma(m + a + 1) ~ m**(-2a-1) * sum_j d_j m**(-j)

obtained by exponentiating the difference of the two Stirling series written
with Bernoulli polynomials.  Only even ``j`` survive, since the arguments are
shifted symmetrically about ``m + 1/2``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """``B_0 .. B_n`` with the ``B_1 = -1/2`` convention."""
    b = [Fraction(1)]
    for k in range(1, n + 1):
        b.append(-sum(comb(k + 1, i) * b[i] for i in range(k)) / (k + 1))
    return tuple(b)


def bernoulli_poly(k: int, x: float) -> float:
    b = bernoulli_numbers(k)
    return sum(comb(k, i) * float(b[i]) * x ** (k - i) for i in range(k + 1))


@lru_cache(maxsize=256)
def gamma_ratio_series(alpha: float, order: int = 20) -> tuple[float, ...]:
    """Coefficients ``d_0..d_order`` of the expansion above, ``a = alpha/2``."""
    a = 0.5 * alpha
    # log-ratio series in w = 1/m: s_j w^j
    s = [0.0] * (order + 1)
    for j in range(1, order + 1):
        k = j + 1
        s[j] = (-1) ** k * (bernoulli_poly(k, -a) - bernoulli_poly(k, 1.0 + a)) / (k * (k - 1))
    d = [1.0] + [0.0] * order
    for n in range(1, order + 1):
        d[n] = sum(k * s[k] * d[n - k] for k in range(1, n + 1)) / n
    return tuple(d)
