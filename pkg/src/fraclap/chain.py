"""Fractional characteristic and Laplacian matrices on the finite cyclic chain.

Two independent constructions are provided for every element:

* ``spectral``: the exact finite Bloch-mode sum over the ``N`` eigenvalues,
* ``periodized``: the infinite-chain closed forms summed over all periodic
  images ``p + nN``.

The spectral sum is the reference; agreement of the two validates the whole
closed-form chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from ._series import gamma_ratio_series
from .elements import FractionalOrder, OrderLike, as_order, infinite_element
from .errors import ConvergenceError
from .zeta import hurwitz_zeta

DEFAULT_TOL = 1e-12
MAX_IMAGES = 10**6
METHODS = ("spectral", "periodized")


@dataclass(frozen=True)
class ChainSpec:
    """A cyclic chain of ``N`` particles with spacing ``h``, mass ``mu`` and
    frequency factor ``omega2``."""

    N: int
    order: FractionalOrder
    h: float = 1.0
    mu: float = 1.0
    omega2: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "order", as_order(self.order))
        if isinstance(self.N, bool) or int(self.N) != self.N:
            raise TypeError(f"N must be an integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        if self.N < 3:
            raise ValueError(f"N must be >= 3, got {self.N}")
        for name in ("h", "mu", "omega2"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def create(cls, alpha: OrderLike, N: int, **kw) -> "ChainSpec":
        return cls(N=N, order=as_order(alpha), **kw)

    @property
    def alpha(self) -> float:
        return self.order.alpha

    @property
    def L(self) -> float:
        return self.N * self.h


@dataclass(frozen=True)
class DispersionPoint:
    l: int
    kappa: float
    omega2_val: float

    @property
    def lam(self) -> float:
        """Eigenvalue ``4 sin^2(kappa/2)`` of the Born-von-Karman generator."""
        return 4.0 * math.sin(0.5 * self.kappa) ** 2


@dataclass(frozen=True, eq=False)
class CirculantMatrix:
    """Symmetric circulant stored by its first row; entry ``(p, q)`` is
    ``first_row[(q - p) % N]``."""

    first_row: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        row = np.array(self.first_row, dtype=float)
        if row.ndim != 1 or row.size == 0:
            raise ValueError("first_row must be a non-empty 1D sequence")
        row.setflags(write=False)
        object.__setattr__(self, "first_row", row)

    @property
    def N(self) -> int:
        return self.first_row.shape[0]

    def entry(self, p: int, q: int) -> float:
        return float(self.first_row[(q - p) % self.N])

    def dense(self) -> np.ndarray:
        n = self.N
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        return self.first_row[idx]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in Bloch-mode order ``l = 0..N-1`` (DFT of the first row)."""
        return np.fft.fft(self.first_row).real

    def row_sum(self) -> float:
        return float(np.sum(self.first_row))

    def scaled(self, factor: float) -> "CirculantMatrix":
        return CirculantMatrix(factor * self.first_row + 0.0, dict(self.meta))

    def matvec(self, u) -> np.ndarray:
        """Circular convolution with ``u`` via FFT."""
        u = np.asarray(u)
        if u.shape != (self.N,):
            raise ValueError(f"dimension mismatch: matrix is {self.N}x{self.N}, field has shape {u.shape}")
        # symmetric row: (C u)_p = sum_k c_k u_{p+k} = sum_k c_k u_{p-k}
        out = np.fft.ifft(np.fft.fft(self.first_row) * np.fft.fft(u))
        return out if np.iscomplexobj(u) else out.real

    def __eq__(self, other):
        return isinstance(other, CirculantMatrix) and np.array_equal(self.first_row, other.first_row)

    __hash__ = None


def bvk_matrix(N: int) -> CirculantMatrix:
    """Born-von-Karman generator ``2 - D - D^dagger`` on the ``N``-cycle."""
    if N < 3:
        raise ValueError(f"N must be >= 3, got {N}")
    row = np.zeros(N)
    row[0], row[1], row[-1] = 2.0, -1.0, -1.0
    return CirculantMatrix(row, {"kind": "bvk", "N": N})


def _kappa(N: int, l) -> np.ndarray:
    return 2.0 * np.pi * np.asarray(l, dtype=float) / N


def _mode_values(order: FractionalOrder, N: int) -> np.ndarray:
    """``(4 sin^2(kappa_l/2))**(alpha/2)`` for ``l = 0..N-1``."""
    s = np.abs(np.sin(0.5 * _kappa(N, np.arange(N))))
    if order.is_even_integer:
        return (4.0 * s * s) ** order.m
    return (2.0 * s) ** order.alpha


def dispersion(spec: ChainSpec, l: int) -> DispersionPoint:
    """Eigenvalue ``omega^2(kappa_l) = omega2 * 2**alpha * |sin(kappa_l/2)|**alpha``."""
    N = spec.N
    if isinstance(l, bool) or int(l) != l or not 0 <= int(l) <= N - 1:
        raise IndexError(f"mode index l must be in 0..{N - 1}, got {l!r}")
    l = int(l)
    kappa = 2.0 * math.pi * l / N
    if l == 0:
        val = 0.0
    else:
        val = spec.omega2 * (2.0 * abs(math.sin(0.5 * kappa))) ** spec.alpha
    return DispersionPoint(l, kappa, val)


def dispersion_relation(spec: ChainSpec) -> np.ndarray:
    """All ``N`` eigenvalues ``omega^2(kappa_l)``."""
    out = spec.omega2 * _mode_values(spec.order, spec.N)
    out[0] = 0.0
    return out


def _check_index(spec: ChainSpec, p) -> int:
    if isinstance(p, bool) or int(p) != p or not 0 <= int(p) <= spec.N - 1:
        raise IndexError(f"element index p must be in 0..{spec.N - 1}, got {p!r}")
    return int(p)


def spectral_element(spec: ChainSpec, p: int) -> float:
    """Exact finite Bloch sum ``(omega2/N) sum_l cos(kappa_l p) (4 sin^2(kappa_l/2))**(alpha/2)``."""
    p = _check_index(spec, p)
    N = spec.N
    vals = _mode_values(spec.order, N)
    # reduce the phase index exactly to avoid large cos arguments
    phase = _kappa(N, (np.arange(N) * p) % N)
    return spec.omega2 * math.fsum(np.cos(phase) * vals) / N


def _spectral_row(spec: ChainSpec) -> np.ndarray:
    N = spec.N
    vals = _mode_values(spec.order, N)
    ls = np.arange(N)
    row = np.empty(N)
    for p in range(N):
        row[p] = math.fsum(np.cos(_kappa(N, (ls * p) % N)) * vals)
    return spec.omega2 * row / N


def _series_tail(order: FractionalOrder, p: int, N: int, n0: int, n_terms: int):
    """Asymptotic-series value of ``sum_{n>=n0} g(p+nN) + g(nN-p)`` and the size
    of its last retained term."""
    alpha = order.alpha
    d = gamma_ratio_series(alpha, 2 * n_terms)
    total = 0.0
    last = 0.0
    for j in range(0, 2 * n_terms + 1, 2):
        beta = alpha + 1.0 + j
        z = hurwitz_zeta(beta, np.array([n0 + p / N, n0 - p / N]), terms=4)
        term = d[j] * N ** (-beta) * float(z[0] + z[1])
        total += term
        last = abs(term)
    return total, last


def periodized_element(
    spec: ChainSpec,
    p: int,
    tol: float = DEFAULT_TOL,
    *,
    accelerate: bool = True,
    max_images: int = MAX_IMAGES,
    full_output: bool = False,
):
    """Finite-chain element from the infinite-chain elements of all periodic images.

    ``f_N(p) = f_inf(p) + sum_{n>=1} [f_inf(p + nN) + f_inf(nN - p)]``

    ``tol`` is an absolute tolerance on ``f_N / omega2``.  With ``accelerate``
    (default) the images are summed directly until they are far from the
    origin and the rest is added through the asymptotic expansion of the
    element, summed in closed form with Hurwitz zeta functions.  Without it the
    series is truncated once the integral of the power-law envelope beyond the
    last image drops below ``tol``; at most ``max_images`` images are summed.

    Returns the value, or ``(value, n_images)`` when ``full_output`` is set,
    where ``n_images`` counts the explicitly summed images including ``n = 0``.
    """
    p = _check_index(spec, p)
    if not tol > 0:
        raise ValueError("tol must be > 0")
    o, N = spec.order, spec.N

    if o.is_even_integer:
        m = o.m
        total = infinite_element(o, p)
        count = 1 if p <= m else 0
        n = 1
        while n * N - p <= m:
            for k in (p + n * N, n * N - p):
                if k <= m:
                    total += infinite_element(o, k)
                    count += 1
            n += 1
        value = spec.omega2 * total
        return (value, count) if full_output else value

    pref = o.kernel_prefactor()
    base = infinite_element(o, p)

    if accelerate:
        m0 = max(48.0, 8.0 * (o.alpha + 1.0))
        while True:
            n0 = max(1, math.ceil((m0 + p) / N))
            if n0 > max_images:
                raise ConvergenceError(f"image count {n0} exceeds max_images={max_images}")
            direct = _accel.image_sum(o.alpha, p, N, 1, n0)
            tail, last = _series_tail(o, p, N, n0, n_terms=8)
            if abs(pref) * last <= 0.01 * tol or m0 > 1e5:
                break
            m0 *= 2.0
        if abs(pref) * last > tol:
            raise ConvergenceError("asymptotic image tail did not reach the requested tolerance")
        value = spec.omega2 * (base - pref * (direct + tail))
        return (value, n0) if full_output else value

    # plain truncation: need (nN - p)**(-alpha) * 2|C|/alpha <= tol
    start_needed = (2.0 * abs(pref) / (o.alpha * tol)) ** (1.0 / o.alpha)
    n_stop = max(2, math.ceil((start_needed + p) / N) + 1)
    if n_stop - 1 > max_images:
        raise ConvergenceError(
            f"periodization needs ~{n_stop - 1:.3g} images for tol={tol:g} at alpha={o.alpha:g}; "
            f"max_images={max_images}"
        )
    direct = _accel.image_sum(o.alpha, p, N, 1, n_stop)
    value = spec.omega2 * (base - pref * direct)
    return (value, n_stop) if full_output else value


def characteristic_matrix(spec: ChainSpec, method: str = "periodized", tol: float = DEFAULT_TOL, **kw) -> CirculantMatrix:
    """Assemble the ``N x N`` characteristic matrix ``f_N`` (includes ``omega2``).

    Only ``p = 0..N//2`` are computed; the rest follow from reflection symmetry
    ``first_row[k] = first_row[N - k]``.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    N = spec.N
    half = N // 2
    if method == "spectral":
        full = _spectral_row(spec)
        vals = full[: half + 1]
    else:
        vals = np.array([periodized_element(spec, p, tol, **kw) for p in range(half + 1)])
    row = np.empty(N)
    row[: half + 1] = vals
    for k in range(half + 1, N):
        row[k] = row[N - k]
    meta = {"kind": "characteristic", "alpha": spec.alpha, "N": N, "method": method, "tol": tol}
    return CirculantMatrix(row, meta)


def laplacian_matrix(spec: ChainSpec, method: str = "periodized", tol: float = DEFAULT_TOL, **kw) -> CirculantMatrix:
    """Fractional Laplacian matrix ``-mu * f_N``; negative semi-definite, rank ``N - 1``."""
    f = characteristic_matrix(spec, method, tol, **kw)
    lap = f.scaled(-spec.mu)
    lap.meta.update(kind="laplacian", mu=spec.mu)
    return lap


def elastic_energy(matrix: CirculantMatrix, u, mu: float = 1.0) -> float:
    """``V = (mu/2) sum_{p,q} conj(u_q) f(|p-q|) u_p`` for a characteristic matrix."""
    u = np.asarray(u)
    if u.shape != (matrix.N,):
        raise ValueError(f"dimension mismatch: matrix is {matrix.N}x{matrix.N}, field has shape {u.shape}")
    return 0.5 * mu * float(np.real(np.vdot(u, matrix.matvec(u))))
