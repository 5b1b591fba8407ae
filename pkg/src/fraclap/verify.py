"""Invariant and oracle checks run by ``fraclap verify``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm

from .chain import (
    ChainSpec,
    bvk_matrix,
    characteristic_matrix,
    dispersion_relation,
    laplacian_matrix,
    periodized_element,
    spectral_element,
)
from .diffusion import EvolutionSpec, evolve_spectral
from .elements import asymptotic_element, element_row, infinite_element, infinite_elements
from .kernels import continuum_limit_residual, periodic_kernel
from .quadrature import element_by_quadrature, nd_element_by_quadrature
from .zeta import hurwitz_zeta

ALPHA_GRID = (0.5, 1.0, 1.5, 2.5, 3.7)
FINITE_ALPHA_GRID = (0.5, 1.0, 1.5, 2.0, 2.5, 3.7)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name}: measured {self.measured:.3e} (limit {self.threshold:.1e}) [{self.seconds:.2f}s]"


def _timed(name: str, fn: Callable[[], tuple[float, float]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        measured, limit = fn()
        ok = bool(measured <= limit)
    except Exception as exc:  # a crashing check is a failed check
        return CheckResult(f"{name} (error: {exc})", False, math.nan, math.nan, time.perf_counter() - t0)
    return CheckResult(name, ok, measured, limit, time.perf_counter() - t0)


def check_integer_order(quick: bool):
    worst = 0.0
    for N in range(3, 17 if quick else 65):
        spec = ChainSpec.create(2, N)
        for method in ("periodized", "spectral"):
            worst = max(worst, float(np.max(np.abs(characteristic_matrix(spec, method).first_row - bvk_matrix(N).first_row))))
    four = infinite_elements(4, np.arange(8))
    worst = max(worst, float(np.max(np.abs(four - [6, -4, 1, 0, 0, 0, 0, 0]))))
    return worst, 1e-14


def check_quadrature(quick: bool):
    pmax = 8 if quick else 32
    worst = max(
        abs(element_by_quadrature(a, p) - infinite_element(a, p)) for a in ALPHA_GRID for p in range(pmax + 1)
    )
    return worst, 1e-10


def check_recursion(quick: bool):
    worst = 0.0
    for a in ALPHA_GRID:
        row = element_row(a, 64)
        closed = infinite_elements(a, np.arange(65))
        worst = max(worst, float(np.max(np.abs(row - closed) / np.abs(closed))))
    return worst, 1e-13


def check_periodization(quick: bool):
    Ns = (4, 8) if quick else (4, 8, 16, 33)
    worst = 0.0
    for a in FINITE_ALPHA_GRID:
        for N in Ns:
            spec = ChainSpec.create(a, N)
            for p in range(N):
                worst = max(worst, abs(periodized_element(spec, p) - spectral_element(spec, p)))
    return worst, 1e-10


def check_asymptotics(quick: bool):
    return max(abs(infinite_element(a, 10**4) / asymptotic_element(a, 10**4) - 1.0) for a in (0.5, 1.5)), 5e-3


def check_spectrum(quick: bool):
    worst = 0.0
    for a in (0.5, 1.0, 1.5, 2.5):
        for N in (5, 8, 16):
            spec = ChainSpec.create(a, N, mu=1.3, omega2=0.7)
            lap = laplacian_matrix(spec)
            w = dispersion_relation(spec)
            scale = spec.mu * float(np.max(w))
            ev = lap.eigenvalues()
            worst = max(worst, float(np.max(np.abs(ev + spec.mu * w))) / scale)
            worst = max(worst, abs(lap.row_sum()) / float(np.max(np.abs(lap.first_row))))
            if np.linalg.matrix_rank(lap.dense(), tol=1e-12 * scale) != N - 1 or int(np.sum(np.abs(ev) <= 1e-12 * scale)) != 1:
                return math.inf, 1e-12
    return worst, 1e-12


def check_periodic_kernel(quick: bool):
    worst = 0.0
    for a in (0.5, 1.0, 1.5, 2.5):
        for xi in (0.1, 0.25, 0.5):
            z = periodic_kernel(a, 1.0, xi, "zeta")
            worst = max(worst, abs(periodic_kernel(a, 1.0, xi, "lattice_sum") / z - 1.0))
    return worst, 1e-8


def check_kernel_spot(quick: bool):
    return abs(periodic_kernel(1, 1, 0.5, "lattice_sum") - math.pi), 1e-10


def check_zeta(quick: bool):
    return abs(hurwitz_zeta(2.0, 0.5) - math.pi**2 / 2), 1e-12


def check_continuum_limit(quick: bool):
    Ns = (64, 256, 1024) if quick else (64, 256, 1024, 4096)
    errs = [e for _, e in continuum_limit_residual(1.5, 0.3, 1.0, Ns)]
    if any(b >= a for a, b in zip(errs, errs[1:])):
        return math.inf, 1e-2
    return errs[-1], 1e-2


def check_diffusion(quick: bool):
    worst = 0.0
    for a in (0.5, 1.0, 2.0):
        spec = ChainSpec.create(a, 64)
        u0 = np.zeros(64)
        u0[0] = 1.0
        u = evolve_spectral(u0, EvolutionSpec(spec, 1.0))
        worst = max(worst, abs(u.sum() - 1.0), max(0.0, -float(u.min())))
        u1 = evolve_spectral(evolve_spectral(u0, EvolutionSpec(spec, 0.4)), EvolutionSpec(spec, 0.6))
        worst = max(worst, float(np.max(np.abs(u1 - u))))
    return worst, 1e-12


def check_diffusion_oracle(quick: bool):
    worst = 0.0
    for a in (0.5, 1.0, 2.0):
        small = ChainSpec.create(a, 8)
        v0 = np.linspace(0.0, 1.0, 8)
        dense = expm(-characteristic_matrix(small, "spectral").dense() * 0.8) @ v0
        worst = max(worst, float(np.max(np.abs(evolve_spectral(v0, EvolutionSpec(small, 0.8)) - dense))))
    return worst, 1e-10


def check_nd(quick: bool):
    worst = 0.0
    for a in (1.0, 1.5, 2.5):
        for p in range(4 if quick else 9):
            worst = max(worst, abs(nd_element_by_quadrature(a, (p,)) - infinite_element(a, p)))
    for p, want in (((0, 0), 4.0), ((1, 0), -1.0), ((1, 1), 0.0)):
        worst = max(worst, abs(nd_element_by_quadrature(2, p) - want))
    return worst, 1e-8


CHECKS = [
    ("integer-order recovery", check_integer_order),
    ("closed form vs quadrature", check_quadrature),
    ("recursion agreement", check_recursion),
    ("periodization vs spectral", check_periodization),
    ("asymptotic law", check_asymptotics),
    ("spectral structure", check_spectrum),
    ("periodic kernel zeta vs lattice sum", check_periodic_kernel),
    ("periodic kernel spot value", check_kernel_spot),
    ("hurwitz zeta(2, 1/2)", check_zeta),
    ("continuum limit", check_continuum_limit),
    ("diffusion invariants", check_diffusion),
    ("diffusion vs matrix exponential", check_diffusion_oracle),
    ("nD consistency", check_nd),
]


def run_checks(quick: bool = False) -> list[CheckResult]:
    return [_timed(name, lambda fn=fn: fn(quick)) for name, fn in CHECKS]
