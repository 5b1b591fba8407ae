"""Discrete fractional Laplacian on finite cyclic and infinite 1D chains.

Closed-form lattice elements, the finite-chain matrix (periodization and exact
Bloch sum), continuum kernels, quadrature oracles and spectral diffusion.
"""

__version__ = "0.1.0"

from ._accel import BACKEND
from .chain import (
    ChainSpec,
    CirculantMatrix,
    DispersionPoint,
    bvk_matrix,
    characteristic_matrix,
    dispersion,
    dispersion_relation,
    elastic_energy,
    laplacian_matrix,
    periodized_element,
    spectral_element,
)
from .diffusion import EvolutionSpec, apply_laplacian, evolve_spectral
from .elements import (
    FractionalOrder,
    asymptotic_element,
    diagonal_element,
    element_row,
    infinite_element,
    infinite_elements,
)
from .errors import ConvergenceError, SingularPointError
from .kernels import (
    ContinuumScaling,
    KernelEval,
    continuum_limit_residual,
    periodic_kernel,
    regularized_kernel_infinite,
    riesz_kernel_infinite,
)
from .quadrature import (
    QuadratureSpec,
    beta_integral,
    duplication_check,
    element_by_quadrature,
    nd_element_by_quadrature,
)
from .zeta import hurwitz_zeta, hurwitz_zeta_abs

__all__ = [name for name in dir() if not name.startswith("_")]
