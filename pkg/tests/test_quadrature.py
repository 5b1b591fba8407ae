import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclap import ConvergenceError
from fraclap.elements import infinite_element
from fraclap.quadrature import (
    QuadratureSpec,
    beta_integral,
    duplication_check,
    element_by_quadrature,
    nd_element_by_quadrature,
    nd_symmetry_images,
    tanh_sinh,
    tanh_sinh_nodes,
)

ALPHAS = (0.5, 1.0, 1.5, 2.5, 3.7)

# mpmath 2D quadrature of the cubic-lattice integral at 20 digits
ND_ORACLE = {(1.5, (1, 0)): -0.554025174807832}


def _beta(b1, b2):
    return math.exp(math.lgamma(b1 + 1) + math.lgamma(b2 + 1) - math.lgamma(b1 + b2 + 2))


def test_nodes_inside_interval():
    x, w = tanh_sinh_nodes(0.0, 1.0, 5)
    # the left end is resolved to subnormal distances, the right end rounds onto b
    assert np.all((x > 0) & (x <= 1))
    assert x.min() < 1e-300
    assert np.sum(w) == pytest.approx(1.0, abs=1e-14)


def test_polynomial_exact():
    assert tanh_sinh(lambda x: 3 * x**2, 0.0, 2.0) == pytest.approx(8.0, abs=1e-13)


def test_convergence_failure():
    with pytest.raises(ConvergenceError):
        tanh_sinh(lambda x: np.cos(400 * x), 0.0, 1.0, abs_tol=1e-15, max_level=3)


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("p", [0, 1, 5, 17, 32])
def test_element_matches_closed_form(alpha, p):
    assert abs(element_by_quadrature(alpha, p) - infinite_element(alpha, p)) <= 1e-10


@pytest.mark.parametrize("alpha, p", [(0.5, 3), (1.5, 10), (3.7, 1)])
def test_gauss_rule_agrees(alpha, p):
    q = QuadratureSpec(abs_tol=1e-12, rule="adaptive-Gauss")
    assert element_by_quadrature(alpha, p, q) == pytest.approx(element_by_quadrature(alpha, p), abs=1e-11)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rule="simpson")
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0)
    with pytest.raises(ValueError):
        element_by_quadrature(0.0, 1)


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.9, 4.0), st.floats(-0.9, 4.0))
def test_beta_integral(b1, b2):
    assert beta_integral(b1, b2) == pytest.approx(_beta(b1, b2), rel=1e-10)


def test_beta_domain():
    with pytest.raises(ValueError):
        beta_integral(-1.0, 0.5)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0, 3.7, 7.25])
def test_duplication(alpha):
    lhs, rhs = duplication_check(alpha)
    assert lhs == pytest.approx(rhs, rel=1e-13)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.5])
@pytest.mark.parametrize("p", range(0, 9, 2))
def test_nd_one_dimension(alpha, p):
    assert abs(nd_element_by_quadrature(alpha, (p,)) - infinite_element(alpha, p)) <= 1e-8


def test_nd_bvk_square_lattice():
    for p, want in (((0, 0), 4.0), ((1, 0), -1.0), ((0, 1), -1.0), ((1, 1), 0.0), ((2, 0), 0.0)):
        assert abs(nd_element_by_quadrature(2, p) - want) <= 1e-8


def test_nd_biharmonic_square_lattice():
    # square of the 5-point stencil
    for p, want in (((0, 0), 20.0), ((1, 0), -8.0), ((1, 1), 2.0), ((2, 0), 1.0)):
        assert abs(nd_element_by_quadrature(4, p) - want) <= 1e-8


def test_nd_cubic_lattice():
    assert abs(nd_element_by_quadrature(2, (0, 0, 0)) - 6.0) <= 1e-8
    assert abs(nd_element_by_quadrature(2, (1, 0, 0)) - (-1.0)) <= 1e-8


def test_nd_fractional_oracle():
    ((alpha, p), want), = ND_ORACLE.items()
    assert nd_element_by_quadrature(alpha, p) == pytest.approx(want, abs=1e-12)


def test_nd_symmetry():
    ref = nd_element_by_quadrature(1.5, (2, 1))
    images = nd_symmetry_images((2, 1))
    assert len(images) == 8
    for img in images:
        assert nd_element_by_quadrature(1.5, img) == pytest.approx(ref, abs=1e-10)


def test_nd_row_sum_sign():
    # nonlocal for fractional order: every off-origin element is negative
    for p in ((1, 0), (1, 1), (2, 1), (3, 3)):
        assert nd_element_by_quadrature(1.0, p) < 0


def test_nd_validation():
    with pytest.raises(ValueError):
        nd_element_by_quadrature(1.5, (1, 0, 0, 0))
    with pytest.raises(ValueError):
        nd_element_by_quadrature(1.5, (1, 0), n=3)
