"""Closed-form elements of the fractional characteristic matrix on the infinite chain.

All values are dimensionless ratios ``f(|p|) / Omega^2``; the frequency factor is
carried by :class:`fraclap.chain.ChainSpec`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _accel

INTEGER_TOL = 1e-12


@dataclass(frozen=True)
class FractionalOrder:
    """Exponent ``alpha`` of the power-law characteristic function ``lambda**(alpha/2)``."""

    alpha: float

    def __post_init__(self):
        a = self.alpha
        if isinstance(a, bool) or not isinstance(a, (int, float, np.floating, np.integer)):
            raise TypeError(f"alpha must be a real number, got {a!r}")
        a = float(a)
        if not math.isfinite(a):
            raise ValueError(f"alpha must be finite, got {a!r}")
        if a <= 0.0:
            raise ValueError(f"alpha must satisfy alpha > 0 (alpha = 0 is forbidden), got {a!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def half(self) -> float:
        return 0.5 * self.alpha

    @property
    def is_even_integer(self) -> bool:
        """True when ``alpha/2`` is a positive integer (within ``INTEGER_TOL``)."""
        h = self.half
        return abs(h - round(h)) <= INTEGER_TOL and round(h) >= 1

    @property
    def m(self) -> int:
        """The integer ``alpha/2``; only meaningful when :attr:`is_even_integer`."""
        return int(round(self.half))

    def sin_factor(self) -> float:
        """``sin(alpha*pi/2)``, exactly zero for even-integer orders."""
        if self.is_even_integer:
            return 0.0
        return math.sin(0.5 * math.pi * self.alpha)

    def kernel_prefactor(self) -> float:
        """``alpha! * sin(alpha*pi/2) / pi``."""
        if self.is_even_integer:
            return 0.0
        return math.gamma(self.alpha + 1.0) * self.sin_factor() / math.pi


OrderLike = Union[FractionalOrder, float, int]


def as_order(order: OrderLike) -> FractionalOrder:
    if isinstance(order, FractionalOrder):
        return order
    return FractionalOrder(order)


def diagonal_element(order: OrderLike) -> float:
    """``alpha! / ((alpha/2)!)**2``, the (always positive) diagonal element."""
    o = as_order(order)
    if o.is_even_integer:
        return float(math.comb(2 * o.m, o.m))
    a = o.alpha
    return math.exp(math.lgamma(a + 1.0) - 2.0 * math.lgamma(o.half + 1.0))


def _binomial_element(m: int, p: int) -> float:
    if p > m:
        return 0.0
    return float((-1) ** p * math.comb(2 * m, m + p))


def _reflection_ratio(o: FractionalOrder, p: int) -> float:
    """``Gamma(p - alpha/2) / Gamma(p + alpha/2 + 1)`` with sign."""
    lg, sg = _accel.log_gamma_ratio(p - o.half, p + o.half + 1.0)
    return sg * math.exp(lg)


def infinite_element(order: OrderLike, p: int) -> float:
    """Element ``f_inf(|p|) / Omega^2`` of the infinite-chain characteristic matrix.

    Non-integer ``alpha/2`` uses the reflection form
    ``-(alpha!/pi) sin(alpha pi/2) Gamma(p - alpha/2) / Gamma(p + alpha/2 + 1)``;
    even-integer orders return the signed binomial, exactly zero beyond
    ``|p| = alpha/2``.
    """
    o = as_order(order)
    p = abs(int(p))
    if o.is_even_integer:
        return _binomial_element(o.m, p)
    if p == 0:
        return diagonal_element(o)
    return -o.kernel_prefactor() * _reflection_ratio(o, p)


def infinite_elements(order: OrderLike, p) -> np.ndarray:
    """Vectorized :func:`infinite_element` for an array of offsets."""
    o = as_order(order)
    p = np.abs(np.asarray(p, dtype=np.int64))
    out = np.empty(p.shape, dtype=float)
    if o.is_even_integer:
        flat = [_binomial_element(o.m, int(k)) for k in p.ravel()]
        return np.array(flat, dtype=float).reshape(p.shape)
    zero = p == 0
    out[zero] = diagonal_element(o)
    if (~zero).any():
        pf = p[~zero].astype(float)
        lg, sg = _accel.log_gamma_ratio_array(pf - o.half, pf + o.half + 1.0)
        out[~zero] = -o.kernel_prefactor() * sg * np.exp(lg)
    return out


def element_row(order: OrderLike, p_max: int) -> np.ndarray:
    """``f_inf(0..p_max) / Omega^2`` by the multiplicative recursion.

    ``f(p+1) = -f(p) (alpha/2 - p) / (alpha/2 + p + 1)``, seeded with the
    diagonal element.  This path shares no code with :func:`infinite_element`
    beyond the seed.
    """
    o = as_order(order)
    p_max = int(p_max)
    if p_max < 0:
        raise ValueError("p_max must be >= 0")
    a = o.alpha if not o.is_even_integer else float(2 * o.m)
    h = 0.5 * a
    row = np.empty(p_max + 1)
    row[0] = diagonal_element(o)
    for p in range(p_max):
        row[p + 1] = -row[p] * (h - p) / (h + p + 1.0)
    return row


def asymptotic_element(order: OrderLike, p: int) -> float:
    """Large-``|p|`` power law ``-(alpha!/pi) sin(alpha pi/2) |p|**(-alpha-1)``."""
    o = as_order(order)
    p = int(p)
    if p == 0:
        raise ValueError("asymptotic_element is undefined at p = 0")
    if o.is_even_integer:
        return 0.0
    return -o.kernel_prefactor() * float(abs(p)) ** (-o.alpha - 1.0)
