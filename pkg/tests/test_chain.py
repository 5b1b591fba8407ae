import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclap import ConvergenceError
from fraclap.chain import (
    ChainSpec,
    CirculantMatrix,
    bvk_matrix,
    characteristic_matrix,
    dispersion,
    dispersion_relation,
    elastic_energy,
    laplacian_matrix,
    periodized_element,
    spectral_element,
)
from fraclap.elements import infinite_element

# exact Bloch sums with mpmath at 40 digits
SPECTRAL_ORACLE = {
    (1.0, 4): [1.2071067811865475244, -0.5, -0.20710678118654752440, -0.5],
    (1.5, 16, 7): -0.0039206919452006843781,
}


class TestChainSpec:
    @pytest.mark.parametrize("kw", [dict(N=2), dict(N=8, h=0.0), dict(N=8, mu=-1.0), dict(N=8, omega2=0.0)])
    def test_validation(self, kw):
        N = kw.pop("N")
        with pytest.raises(ValueError):
            ChainSpec.create(1.5, N, **kw)

    def test_non_integer_N(self):
        with pytest.raises((TypeError, ValueError)):
            ChainSpec.create(1.5, 8.5)

    def test_length(self):
        assert ChainSpec.create(1, 10, h=0.1).L == pytest.approx(1.0)


def test_bvk_matrix():
    d = bvk_matrix(5).dense()
    expect = 2 * np.eye(5) - np.roll(np.eye(5), 1, 1) - np.roll(np.eye(5), -1, 1)
    np.testing.assert_array_equal(d, expect)


def test_spectral_oracle_alpha_one():
    spec = ChainSpec.create(1.0, 4)
    got = [spectral_element(spec, p) for p in range(4)]
    np.testing.assert_allclose(got, SPECTRAL_ORACLE[(1.0, 4)], atol=1e-15, rtol=0)


def test_spectral_oracle_alpha_three_halves():
    assert spectral_element(ChainSpec.create(1.5, 16), 7) == pytest.approx(SPECTRAL_ORACLE[(1.5, 16, 7)], abs=1e-15)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.5, 3.7])
@pytest.mark.parametrize("N", [4, 7, 16, 33])
def test_periodized_matches_spectral(alpha, N):
    spec = ChainSpec.create(alpha, N)
    for p in range(N):
        assert abs(periodized_element(spec, p) - spectral_element(spec, p)) <= 1e-12


def test_plain_truncation_agrees_when_feasible():
    spec = ChainSpec.create(2.5, 8)
    for p in range(5):
        plain = periodized_element(spec, p, tol=1e-10, accelerate=False)
        assert abs(plain - spectral_element(spec, p)) <= 1e-10


def test_plain_truncation_budget():
    spec = ChainSpec.create(0.5, 8)
    with pytest.raises(ConvergenceError):
        periodized_element(spec, 1, tol=1e-12, accelerate=False, max_images=10**4)


def test_integer_order_image_count():
    # alpha=2: only the neighbours contribute, every other image vanishes exactly
    assert periodized_element(ChainSpec.create(2, 8), 1, full_output=True) == (-1.0, 1)
    assert periodized_element(ChainSpec.create(2, 3), 1, full_output=True) == (-1.0, 1)
    # on N=3 column 2 is reached through the image p=-1
    assert periodized_element(ChainSpec.create(2, 3), 2, full_output=True) == (-1.0, 1)


def test_index_range():
    spec = ChainSpec.create(1.5, 8)
    for bad in (-1, 8):
        with pytest.raises(IndexError):
            periodized_element(spec, bad)
        with pytest.raises(IndexError):
            spectral_element(spec, bad)


@pytest.mark.parametrize("N", range(3, 65))
@pytest.mark.parametrize("method", ["periodized", "spectral"])
def test_integer_order_recovery(N, method):
    f = characteristic_matrix(ChainSpec.create(2, N, omega2=1.25), method)
    assert np.max(np.abs(f.dense() - 1.25 * bvk_matrix(N).dense())) <= 1e-14


def test_p_half_column():
    # p = N/2 collects the images nN +- N/2 twice; compare against the Bloch sum
    for alpha in (0.5, 1.5, 3.7):
        spec = ChainSpec.create(alpha, 10)
        assert periodized_element(spec, 5) == pytest.approx(spectral_element(spec, 5), abs=1e-13)


def test_approach_to_infinite_chain():
    devs = []
    for N in (8, 16, 32, 64, 128):
        spec = ChainSpec.create(1.5, N)
        devs.append([abs(periodized_element(spec, p) - infinite_element(1.5, p)) for p in range(5)])
    devs = np.array(devs)
    assert np.all(np.diff(devs, axis=0) < 0)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.5, 3.7])
@pytest.mark.parametrize("N", [5, 8, 16])
def test_spectral_structure(alpha, N):
    spec = ChainSpec.create(alpha, N, mu=1.3, omega2=0.7)
    lap = laplacian_matrix(spec)
    w = dispersion_relation(spec)
    scale = spec.mu * w.max()
    np.testing.assert_allclose(lap.eigenvalues(), -spec.mu * w, atol=1e-12 * scale, rtol=0)
    assert abs(lap.row_sum()) <= 1e-12
    assert np.linalg.matrix_rank(lap.dense(), tol=1e-12 * scale) == N - 1
    assert int(np.sum(np.abs(lap.eigenvalues()) <= 1e-12 * scale)) == 1


def test_dispersion_point():
    spec = ChainSpec.create(1.0, 8, omega2=2.0)
    pt = dispersion(spec, 4)
    assert pt.kappa == pytest.approx(math.pi)
    assert pt.omega2_val == pytest.approx(4.0)
    assert pt.lam == pytest.approx(4.0)
    assert dispersion(spec, 0).omega2_val == 0
    with pytest.raises(IndexError):
        dispersion(spec, 8)


@pytest.mark.parametrize("alpha", [0.4, 1.0, 2.0])
def test_markov_structure(alpha):
    f = characteristic_matrix(ChainSpec.create(alpha, 16), "spectral").dense()
    off = f[~np.eye(16, dtype=bool)]
    assert np.all(off <= 1e-15)
    assert np.allclose(f.sum(axis=1), 0, atol=1e-13)


def test_markov_fails_above_two():
    row = characteristic_matrix(ChainSpec.create(3.0, 16)).first_row
    assert np.any(row[1:] > 1e-6)


class TestCirculant:
    def test_read_only(self):
        m = bvk_matrix(4)
        with pytest.raises(ValueError):
            m.first_row[0] = 5.0

    def test_matvec_dimension(self):
        with pytest.raises(ValueError):
            bvk_matrix(4).matvec(np.ones(5))

    @settings(max_examples=25)
    @given(st.integers(3, 40), st.floats(0.2, 4.0), st.integers(0, 2**31))
    def test_matvec_matches_dense(self, N, alpha, seed):
        m = characteristic_matrix(ChainSpec.create(alpha, N), "spectral")
        u = np.random.default_rng(seed).normal(size=N)
        np.testing.assert_allclose(m.matvec(u), m.dense() @ u, atol=1e-12)

    def test_symmetric(self):
        d = characteristic_matrix(ChainSpec.create(1.5, 9)).dense()
        np.testing.assert_array_equal(d, d.T)

    def test_equality(self):
        a = characteristic_matrix(ChainSpec.create(2, 6))
        assert a == CirculantMatrix(bvk_matrix(6).first_row.copy(), {})


@pytest.mark.parametrize("alpha", [0.5, 1.5, 2.5])
@pytest.mark.parametrize("l", [1, 3])
def test_energy_of_single_mode(alpha, l):
    N, mu = 12, 0.8
    spec = ChainSpec.create(alpha, N, mu=mu)
    u = np.cos(2 * np.pi * l * np.arange(N) / N)
    f = characteristic_matrix(spec)
    assert elastic_energy(f, u, mu) == pytest.approx(0.5 * mu * dispersion(spec, l).omega2_val * N / 2, rel=1e-12)


@settings(max_examples=30)
@given(st.integers(3, 24), st.floats(0.2, 4.0), st.integers(0, 2**31))
def test_energy_nonnegative(N, alpha, seed):
    f = characteristic_matrix(ChainSpec.create(alpha, N), "spectral")
    u = np.random.default_rng(seed).normal(size=N)
    assert elastic_energy(f, u) >= -1e-12
    assert abs(elastic_energy(f, u - u.mean() + 3.0) - elastic_energy(f, u - u.mean())) <= 1e-10


def test_unknown_method():
    with pytest.raises(ValueError):
        characteristic_matrix(ChainSpec.create(1, 4), "fourier")
