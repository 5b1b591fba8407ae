"""Pure-Python/numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` one for one and are used whenever the compiled
extension is unavailable (or ``FRACLAP_PURE_PYTHON=1`` is set).
"""

from __future__ import annotations

import math

import numpy as np

# B_{2k} / (2k (2k - 1)) for k = 1..8
STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
STIRLING_MIN = 10.0


def gamma_sign(x: float) -> float:
    """Sign of Gamma(x) for real, non-pole ``x``."""
    if x > 0.0:
        return 1.0
    if x == math.floor(x):
        raise ValueError(f"Gamma has a pole at {x!r}")
    return -1.0 if int(math.floor(-x)) % 2 == 0 else 1.0


def _stirling_tail(z):
    zi2 = 1.0 / (z * z)
    acc = 0.0
    for c in reversed(STIRLING_COEFFS):
        acc = acc * zi2 + c
    return acc / z


def log_gamma_ratio(x: float, y: float) -> tuple[float, float]:
    """Return ``(log|Gamma(x)/Gamma(y)|, sign)``.

    For large arguments the Stirling series of the difference is used, which
    avoids the cancellation of two large ``lgamma`` values.
    """
    if x >= STIRLING_MIN and y >= STIRLING_MIN:
        d = x - y
        val = (x - 0.5) * math.log1p(d / y) + d * (math.log(y) - 1.0)
        val += _stirling_tail(x) - _stirling_tail(y)
        return val, 1.0
    return math.lgamma(x) - math.lgamma(y), gamma_sign(x) * gamma_sign(y)


def log_gamma_ratio_array(x, y):
    """Vectorized :func:`log_gamma_ratio` over broadcastable arrays."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.empty(x.shape)
    sgn = np.ones(x.shape)
    big = (x >= STIRLING_MIN) & (y >= STIRLING_MIN)
    if big.any():
        xb, yb = x[big], y[big]
        d = xb - yb
        out[big] = (
            (xb - 0.5) * np.log1p(d / yb)
            + d * (np.log(yb) - 1.0)
            + _stirling_tail(xb)
            - _stirling_tail(yb)
        )
    for idx in zip(*np.nonzero(~big)):
        out[idx], sgn[idx] = log_gamma_ratio(float(x[idx]), float(y[idx]))
    return out, sgn


def image_sum(alpha: float, p: int, n_chain: int, n_start: int, n_stop: int) -> float:
    """Sum ``g(p + nN) + g(nN - p)`` over ``n_start <= n < n_stop``.

    ``g(m) = Gamma(m - alpha/2) / Gamma(m + alpha/2 + 1)`` is the reflection
    form of the infinite-chain element without its constant prefactor.
    """
    if n_stop <= n_start:
        return 0.0
    a = 0.5 * alpha
    n = np.arange(n_stop - 1, n_start - 1, -1, dtype=float)
    m = np.concatenate([p + n * n_chain, n * n_chain - p])
    lg, sg = log_gamma_ratio_array(m - a, m + a + 1.0)
    return float(np.sum(sg * np.exp(lg)))


def circulant_matvec(row, u):
    """Dense O(N^2) product of the circulant with first row ``row`` and ``u``."""
    row = np.asarray(row, dtype=float)
    u = np.asarray(u, dtype=float)
    n = row.shape[0]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx] @ u


def abs_power_sum(x: float, beta: float, n_lo: int, n_hi: int) -> float:
    """Sum ``|x + n|**(-beta)`` for ``n_lo <= n <= n_hi``."""
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    terms = np.abs(x + n) ** (-beta)
    order = np.argsort(-np.abs(n), kind="stable")
    return float(np.sum(terms[order]))
