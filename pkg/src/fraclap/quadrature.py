"""Numerical quadrature oracles for the matrix elements.

Everything here is computed from integrals (the Brillouin-zone integral, the
Beta integral, the nD cubic-lattice integral) and never from the closed forms
it is meant to check.  The default rule is tanh-sinh on panels of width at
most ``pi / (4p + 4)``, which copes with the mild ``sin**alpha`` endpoint
behaviour and resolves the ``cos(2 p phi)`` oscillation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import ConvergenceError

RULES = ("tanh-sinh", "adaptive-Gauss")
_T_MAX = 6.2
_MAX_LEVEL = 9


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-13
    max_subdivisions: int = 200
    rule: str = "tanh-sinh"

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be > 0")
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}, got {self.rule!r}")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


def tanh_sinh_nodes(a: float, b: float, level: int):
    """Nodes and weights of the tanh-sinh rule on ``[a, b]`` with step ``2**-level``.

    Nodes near each end are formed as ``end -/+ distance`` with the distance
    computed directly, so they do not collapse onto the endpoint.
    """
    h = 2.0 ** (-level)
    t = np.arange(-_T_MAX, _T_MAX + 0.5 * h, h)
    u = 0.5 * np.pi * np.abs(np.sinh(t))
    e = np.exp(-2.0 * u)
    # distance from the nearer endpoint: (b - a) / (1 + exp(2|u|))
    dist = (b - a) * e / (1.0 + e)
    x = np.where(t < 0, a + dist, b - dist)
    w = h * (b - a) * np.pi * np.cosh(t) * e / (1.0 + e) ** 2
    keep = (dist > 0) & (w > 0)
    return x[keep], w[keep]


def _panels(a: float, b: float, width: float) -> np.ndarray:
    n = max(1, math.ceil((b - a) / width - 1e-12))
    return np.linspace(a, b, n + 1)


def _rule_nodes(edges: np.ndarray, level: int):
    xs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = tanh_sinh_nodes(lo, hi, level)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def tanh_sinh(f: Callable, a: float, b: float, abs_tol: float = 1e-13, panel_width: float | None = None,
              max_level: int = _MAX_LEVEL) -> float:
    """Integrate a vectorized ``f`` over ``[a, b]``, halving the step until two
    successive levels agree to ``abs_tol``."""
    edges = _panels(a, b, panel_width or (b - a))
    prev = None
    for level in range(2, max_level + 1):
        x, w = _rule_nodes(edges, level)
        val = float(np.dot(w, f(x)))
        if prev is not None and abs(val - prev) <= abs_tol:
            return val
        prev = val
    raise ConvergenceError(f"tanh-sinh did not converge to {abs_tol:g} by level {max_level}")


def _integrate_1d(f, a, b, q: QuadratureSpec, panel_width: float) -> float:
    if q.rule == "tanh-sinh":
        return tanh_sinh(f, a, b, q.abs_tol, panel_width)
    edges = _panels(a, b, panel_width)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err, *rest = integrate.quad(lambda t: float(f(np.array([t]))[0]), lo, hi,
                                         epsabs=q.abs_tol / len(edges), epsrel=0.0,
                                         limit=q.max_subdivisions, full_output=1)
        if len(rest) > 1 and err > q.abs_tol:
            raise ConvergenceError(f"adaptive Gauss-Kronrod: {rest[1]}")
        total += val
    return total


def element_by_quadrature(alpha: float, p: int, q: QuadratureSpec | None = None) -> float:
    """``(2**(alpha+1)/pi) * int_0^{pi/2} sin(phi)**alpha cos(2 p phi) dphi``."""
    q = q or QuadratureSpec()
    alpha = float(alpha)
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    p = abs(int(p))

    def f(phi):
        return np.sin(phi) ** alpha * np.cos(2.0 * p * phi)

    width = np.pi / (4 * p + 4)
    return 2.0 ** (alpha + 1.0) / np.pi * _integrate_1d(f, 0.0, 0.5 * np.pi, q, width)


def beta_integral(b1: float, b2: float, q: QuadratureSpec | None = None) -> float:
    """``int_0^1 xi**b1 (1 - xi)**b2 dxi`` for ``b1, b2 > -1``."""
    q = q or QuadratureSpec()
    if not (b1 > -1 and b2 > -1):
        raise ValueError("Beta integral requires b1 > -1 and b2 > -1")

    # split at 1/2 so each endpoint singularity sits at a panel end; the right
    # half is mirrored so (1 - xi) is a small distance computed exactly
    def left(x):
        return x**b1 * (1.0 - x) ** b2

    def right(x):
        return (1.0 - x) ** b1 * x**b2

    return _integrate_1d(left, 0.0, 0.5, q, 0.5) + _integrate_1d(right, 0.0, 0.5, q, 0.5)


def duplication_check(alpha: float) -> tuple[float, float]:
    """Both sides of ``alpha!/(alpha/2)! = 2**alpha/sqrt(pi) * ((alpha-1)/2)!``."""
    alpha = float(alpha)
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    lhs = math.exp(math.lgamma(alpha + 1.0) - math.lgamma(0.5 * alpha + 1.0))
    rhs = math.exp(alpha * math.log(2.0) - 0.5 * math.log(math.pi) + math.lgamma(0.5 * (alpha - 1.0) + 1.0))
    return lhs, rhs


def nd_element_by_quadrature(alpha: float, p, n: int | None = None, q: QuadratureSpec | None = None,
                             chunk: int = 2_000_000) -> float:
    """Element of the fractional characteristic matrix of the infinite cubic lattice.

    ``(2**(alpha+n)/pi**n) int_{[0,pi/2]^n} prod_j cos(2 p_j phi_j) (sum_j sin^2 phi_j)**(alpha/2)``

    evaluated with a tensor-product tanh-sinh rule; the level is raised until
    two successive levels agree to ``q.abs_tol``.
    """
    q = q or QuadratureSpec(abs_tol=1e-10)
    p = tuple(abs(int(k)) for k in np.atleast_1d(p))
    n = len(p) if n is None else int(n)
    if len(p) != n:
        raise ValueError(f"p has {len(p)} components but n={n}")
    if not 1 <= n <= 3:
        raise ValueError("dimension n must be 1, 2 or 3")
    alpha = float(alpha)
    if not alpha > 0:
        raise ValueError("alpha must be > 0")
    if n == 1:
        return element_by_quadrature(alpha, p[0], q)

    edges = [_panels(0.0, 0.5 * np.pi, np.pi / (4 * k + 4)) for k in p]
    pref = 2.0 ** (alpha + n) / np.pi**n
    prev = None
    for level in range(2, _MAX_LEVEL):
        rules = [_rule_nodes(e, level) for e in edges]
        val = _tensor_sum(alpha, p, rules, chunk)
        if prev is not None and abs(val - prev) * pref <= q.abs_tol:
            return pref * val
        prev = val
    raise ConvergenceError(f"nD tanh-sinh did not converge to {q.abs_tol:g}")


def _tensor_sum(alpha, p, rules, chunk):
    xs = [r[0] for r in rules]
    ws = [r[1] for r in rules]
    s2 = [np.sin(x) ** 2 for x in xs]
    cw = [w * np.cos(2.0 * k * x) for w, k, x in zip(ws, p, xs)]
    # first axis is looped in blocks; the remaining axes are broadcast
    inner_s2 = s2[1]
    inner_w = cw[1]
    if len(rules) == 3:
        inner_s2 = (s2[1][:, None] + s2[2][None, :]).ravel()
        inner_w = (cw[1][:, None] * cw[2][None, :]).ravel()
    step = max(1, chunk // inner_s2.size)
    total = 0.0
    for i in range(0, s2[0].size, step):
        blk = s2[0][i : i + step, None] + inner_s2[None, :]
        total += float(cw[0][i : i + step] @ (blk ** (0.5 * alpha) @ inner_w))
    return total


def nd_symmetry_images(p) -> list[tuple[int, ...]]:
    """All coordinate permutations and sign flips of ``p`` (for symmetry checks)."""
    p = tuple(int(k) for k in p)
    out = set()
    for perm in itertools.permutations(p):
        for signs in itertools.product((1, -1), repeat=len(p)):
            out.add(tuple(s * k for s, k in zip(signs, perm)))
    return sorted(out)
