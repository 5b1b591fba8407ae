"""Hurwitz-type zeta functions by direct summation plus Euler-Maclaurin tail.

``hurwitz_zeta(beta, x) = sum_{n>=0} (x + n)**(-beta)`` (principal branch for
complex ``x``) and ``hurwitz_zeta_abs(beta, x) = sum_{n>=0} |x + n|**(-beta)``.
"""

from __future__ import annotations

import math

import numpy as np

# B_2, B_4, B_6, B_8
_BERNOULLI_EVEN = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0)

CUTOFF = 50


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not beta > 1.0:
        raise ValueError(f"Hurwitz zeta series diverges for beta <= 1 (pole), got beta={beta!r}")
    return beta


def _em_tail(beta: float, z, terms: int):
    """Euler-Maclaurin estimate of ``sum_{n>=0} (z + n)**(-beta)`` for large ``Re z``."""
    zs = z ** (-beta)
    tail = z * zs / (beta - 1.0) + 0.5 * zs
    rising = beta
    zpow = zs / z
    fact = 2.0
    for k in range(1, terms + 1):
        tail = tail + _BERNOULLI_EVEN[k - 1] / fact * rising * zpow
        rising *= (beta + 2 * k - 1) * (beta + 2 * k)
        zpow = zpow / (z * z)
        fact *= (2 * k + 1) * (2 * k + 2)
    return tail


def _direct(beta, x, n_direct, use_abs):
    n = np.arange(n_direct - 1, -1, -1, dtype=float)
    base = x[..., None] + n
    if use_abs:
        base = np.abs(base)
    if np.any(base == 0):
        raise ValueError("singular term: x + n = 0 for some n >= 0")
    return np.sum(base ** (-beta), axis=-1)


def _zeta(beta, x, use_abs, terms):
    beta = _check_beta(beta)
    if not 1 <= terms <= len(_BERNOULLI_EVEN):
        raise ValueError(f"terms must be in 1..{len(_BERNOULLI_EVEN)}")
    xa = np.asarray(x)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    if np.iscomplexobj(xa):
        if use_abs:
            raise TypeError("hurwitz_zeta_abs takes real x")
    else:
        xa = xa.astype(float)
        if not use_abs and np.any(xa < 0) and beta != math.floor(beta):
            raise ValueError("real x < 0 with non-integer beta; pass complex x for the principal branch")
    shift = max(0, math.ceil(-float(np.min(xa.real))))
    n_direct = CUTOFF + shift
    out = _direct(beta, xa, n_direct, use_abs) + _em_tail(beta, xa + n_direct, terms)
    return out[0] if scalar else out


def hurwitz_zeta(beta: float, x, terms: int = 2):
    """``zeta(beta, x) = sum_{n>=0} (x + n)**(-beta)`` for ``beta > 1``.

    ``x`` may be a scalar or array, real or complex.  ``terms`` Bernoulli
    corrections (``B_2 .. B_{2*terms}``) are applied after ``CUTOFF`` direct terms.
    """
    return _zeta(beta, x, False, terms)


def hurwitz_zeta_abs(beta: float, x, terms: int = 2):
    """``sum_{n>=0} |x + n|**(-beta)`` for real ``x`` and ``beta > 1``."""
    return _zeta(beta, x, True, terms)
