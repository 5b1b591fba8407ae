"""Continuum-limit kernels of the fractional Laplacian.

Sign convention: the functions here return the fractional-Laplacian kernel
``-K(|x|)``, which is positive away from the singular points for ``0 < alpha < 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .chain import ChainSpec, periodized_element
from .elements import OrderLike, as_order
from .errors import SingularPointError
from .zeta import hurwitz_zeta, hurwitz_zeta_abs

PERIODIC_METHODS = ("zeta", "lattice_sum", "regularized")


@dataclass(frozen=True)
class ContinuumScaling:
    """Scaling ``mu(h) = rho0 h`` and ``omega2(h) = A_alpha h**(-alpha)``."""

    rho0: float = 1.0
    A_alpha: float = 1.0

    def __post_init__(self):
        if not (self.rho0 > 0 and self.A_alpha > 0):
            raise ValueError("rho0 and A_alpha must be > 0")

    def mu(self, h: float) -> float:
        return self.rho0 * h

    def omega2(self, h: float, alpha: float) -> float:
        return self.A_alpha * h ** (-alpha)

    def chain(self, alpha: OrderLike, N: int, L: float) -> ChainSpec:
        order = as_order(alpha)
        h = L / N
        return ChainSpec(N=N, order=order, h=h, mu=self.mu(h), omega2=self.omega2(h, order.alpha))


@dataclass(frozen=True)
class KernelEval:
    x: float
    L: float
    alpha: float
    value: float
    epsilon: float = 0.0
    method: str = "infinite"


def _i_power(s: float) -> complex:
    return complex(math.cos(0.5 * math.pi * s), math.sin(0.5 * math.pi * s))


def riesz_kernel_infinite(alpha: OrderLike, x):
    """``(alpha!/pi) sin(alpha pi/2) |x|**(-alpha-1)``; zero for even-integer orders."""
    o = as_order(alpha)
    xa = np.asarray(x, dtype=float)
    if np.any(xa == 0):
        raise SingularPointError("the kernel is hyper-singular at x = 0; use regularized_kernel_infinite")
    val = o.kernel_prefactor() * np.abs(xa) ** (-o.alpha - 1.0)
    return float(val) if val.ndim == 0 else val


def regularized_kernel_infinite(alpha: OrderLike, x, epsilon: float):
    """``-(alpha!/pi) Re[i**(alpha+1) / (x + i eps)**(alpha+1)]`` for ``eps > 0``."""
    o = as_order(alpha)
    if not epsilon > 0:
        raise ValueError("epsilon must be > 0")
    s = o.alpha + 1.0
    z = np.asarray(x, dtype=float) + 1j * epsilon
    val = -math.gamma(s) / math.pi * np.real(_i_power(s) * z ** (-s))
    return float(val) if val.ndim == 0 else val


def _reduce(x: float, L: float) -> float:
    """``|x/L|`` folded into ``[0, 1/2]``."""
    return abs(math.remainder(x / L, 1.0))


def _lattice_sum(xi: float, s: float, tol: float, max_terms: int = 10**7) -> float:
    # direct images |n| <= M, midpoint-rule integral for the rest
    M = math.ceil((s / (24.0 * tol)) ** (1.0 / (s + 1.0)))
    M = min(max(M, 1000), max_terms)
    direct = _accel.abs_power_sum(xi, s, -M, M)
    tail = ((M + 0.5 - xi) ** (1.0 - s) + (M + 0.5 + xi) ** (1.0 - s)) / (s - 1.0)
    return direct + tail


def _regularized_sum(xi: float, s: float, eta: float) -> float:
    """``Re{i**s [(xi + i eta)**(-s) - zeta(s, xi + i eta) - zeta(s, -xi + i eta)]}``."""
    z = hurwitz_zeta(s, np.array([xi + 1j * eta, -xi + 1j * eta]), terms=4)
    inner = (xi + 1j * eta) ** (-s) - z[0] - z[1]
    return float(np.real(_i_power(s) * inner))


def richardson(values, ratio: float = 2.0) -> float:
    """Extrapolate ``values[k] = F(eps0 / ratio**k)`` to ``eps -> 0`` assuming an
    expansion in integer powers of ``eps``."""
    T = [float(v) for v in values]
    for j in range(1, len(T)):
        f = ratio**j
        T = [(f * T[k + 1] - T[k]) / (f - 1.0) for k in range(len(T) - 1)]
    return T[0]


def periodic_kernel(alpha: OrderLike, L: float, x: float, method: str = "zeta", *,
                    epsilon: float | None = None, tol: float = 1e-13, levels: int = 7) -> float:
    """L-periodic fractional-Laplacian kernel ``-K_L(|x|)``.

    ``(alpha! sin(alpha pi/2)/pi) sum_n |x - nL|**(-alpha-1)`` evaluated by

    * ``zeta``: the Hurwitz-zeta closed form,
    * ``lattice_sum``: direct image sum with an integral tail,
    * ``regularized``: the ``eps``-regularized zeta form.  With ``epsilon`` given
      the regularized value at that ``eps`` is returned (finite everywhere);
      otherwise ``eps -> 0`` is taken by Richardson extrapolation over
      ``levels`` halvings starting at an eighth of the distance to the nearest
      singularity.
    """
    o = as_order(alpha)
    if not L > 0:
        raise ValueError("L must be > 0")
    if method not in PERIODIC_METHODS:
        raise ValueError(f"method must be one of {PERIODIC_METHODS}, got {method!r}")
    s = o.alpha + 1.0
    xi = _reduce(float(x), L)

    if method == "regularized":
        scale = math.gamma(s) / (math.pi * L**s)
        if epsilon is not None:
            if not epsilon > 0:
                raise ValueError("epsilon must be > 0")
            return scale * _regularized_sum(xi, s, epsilon / L)
        if xi == 0.0:
            raise SingularPointError("x is a multiple of L; pass epsilon > 0 for the regularized value")
        if o.is_even_integer:
            return 0.0
        eta0 = min(xi, 1.0 - xi) / 8.0
        vals = [_regularized_sum(xi, s, eta0 / 2.0**k) for k in range(levels)]
        return scale * richardson(vals)

    if xi == 0.0:
        raise SingularPointError("the periodic kernel is hyper-singular at multiples of L")
    pref = o.kernel_prefactor()
    if pref == 0.0:
        return 0.0
    if method == "zeta":
        z = hurwitz_zeta_abs(s, np.array([xi, -xi]), terms=4)
        inner = -(xi ** (-s)) + z[0] + z[1]
    else:
        inner = _lattice_sum(xi, s, tol)
    return pref * L ** (-s) * float(inner)


def evaluate(alpha: OrderLike, x: float, L: float | None = None, method: str = "zeta",
             epsilon: float | None = None) -> KernelEval:
    """Evaluate the infinite-space (``L is None``) or periodic kernel as a record."""
    o = as_order(alpha)
    if L is None or math.isinf(L):
        if epsilon:
            val = regularized_kernel_infinite(o, x, epsilon)
            return KernelEval(x, math.inf, o.alpha, val, epsilon, "regularized")
        return KernelEval(x, math.inf, o.alpha, riesz_kernel_infinite(o, x), 0.0, "infinite")
    val = periodic_kernel(o, L, x, method, epsilon=epsilon)
    return KernelEval(x, L, o.alpha, val, epsilon or 0.0, method)


def continuum_limit_residual(alpha: OrderLike, x: float, L: float, Ns, scaling: ContinuumScaling | None = None,
                             tol_rel: float = 1e-12, *, at_site: bool = False):
    """Convergence of lattice elements to the periodic kernel as ``h = L/N -> 0``.

    For each ``N`` the site ``p = round(x/h)`` is taken and
    ``(mu(h)/h**2) f_N(p)`` is compared with ``rho0 A_alpha K_L(x)``.  With
    ``at_site`` the kernel is evaluated at the lattice site ``p h`` instead,
    which removes the O(h) snapping error and isolates the lattice correction.
    Returns a list of ``(h, relative_error)``.
    """
    o = as_order(alpha)
    if o.is_even_integer:
        raise ValueError("even-integer orders have a distributional kernel; no pointwise continuum limit")
    if not 0 < x < L:
        raise ValueError("need 0 < x < L")
    scaling = scaling or ContinuumScaling()
    out = []
    for N in Ns:
        spec = scaling.chain(o, int(N), L)
        h = spec.h
        p = int(round(x / h))
        if p == 0 or p == spec.N:
            raise ValueError(f"x/h rounds to a multiple of N at N={N}; lattice too coarse")
        ref_kernel = -periodic_kernel(o, L, p * h if at_site else x, "zeta")
        ref = scaling.rho0 * scaling.A_alpha * ref_kernel
        tol = tol_rel * abs(ref_kernel) * h ** (o.alpha + 1.0)
        f = periodized_element(spec, p, tol=max(tol, 1e-300)) / spec.omega2
        lattice = spec.mu / h**2 * spec.omega2 * f
        out.append((h, abs(lattice - ref) / abs(ref)))
    return out
