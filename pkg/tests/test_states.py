import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photonbox import (
    CoherentParams,
    FockSpace,
    GaussianPacket,
    Grid,
    coherent,
    coherent_space,
    expectation,
    fock,
    gaussian_packet_state,
    observables,
    random_state,
    required_dim,
    superposition,
    variance,
)
from photonbox.errors import GridError, TruncationError
from photonbox.states import coherent_amplitudes, poisson_tail


def series_term(alpha, n):
    """exp(-|a|^2/2) a^n / sqrt(n!) in 50-digit arithmetic."""
    with mpmath.workdps(50):
        a = mpmath.mpc(alpha)
        return complex(mpmath.exp(-abs(a) ** 2 / 2) * a**n / mpmath.sqrt(mpmath.factorial(n)))


class TestFock:
    def test_ground(self):
        psi = fock(FockSpace(6), 0)
        np.testing.assert_array_equal(psi.amps, np.eye(6)[0])

    def test_energy(self):
        space = FockSpace(10, omega=2.0)
        ops = observables(space)
        assert expectation(fock(space, 3), ops["H"]).real == pytest.approx(3.5 * 2.0)
        assert variance(fock(space, 3), ops["H"]).variance == 0

    def test_out_of_range(self):
        with pytest.raises(TruncationError):
            fock(FockSpace(4), 4)


class TestCoherent:
    def test_zero_is_ground(self):
        psi = coherent(FockSpace(20), 0)
        np.testing.assert_array_equal(psi.amps, np.eye(20)[0])

    def test_mean_number(self):
        space = coherent_space(1.0)
        assert expectation(coherent(space, 1.0), observables(space)["N"]).real == pytest.approx(1.0, abs=1e-10)

    def test_imaginary_alpha_moments(self):
        space = coherent_space(2j)
        ops = observables(space)
        psi = coherent(space, CoherentParams(2j))
        assert abs(expectation(psi, ops["x"])) < 1e-9
        assert expectation(psi, ops["p"]).real == pytest.approx(math.sqrt(2) * 2, abs=1e-9)

    @pytest.mark.parametrize("alpha", [0, 0.3, 1 + 1j, -2.5, 4j, 7 - 3j, 11.9, 12])
    def test_series_term_by_term(self, alpha):
        dim = required_dim(alpha)
        amps = coherent_amplitudes(alpha, dim)
        ref = np.array([series_term(alpha, n) for n in range(dim)])
        assert np.max(np.abs(amps - ref)) < 1e-14

    @settings(max_examples=40, deadline=None)
    @given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 10), st.floats(0.1, 10))
    def test_displacement_consistency(self, re, im, m, w):
        alpha = complex(re, im)
        space = coherent_space(alpha, mass=m, omega=w)
        ops = observables(space)
        psi = coherent(space, alpha)
        assert expectation(psi, ops["x"]).real == pytest.approx(math.sqrt(2 / (m * w)) * re, abs=1e-9)
        assert expectation(psi, ops["p"]).real == pytest.approx(math.sqrt(2 * m * w) * im, abs=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(st.complex_numbers(max_magnitude=12, allow_nan=False, allow_infinity=False))
    def test_constructor_invariants(self, alpha):
        space = coherent_space(alpha)
        psi = coherent(space, alpha)
        assert abs(np.linalg.norm(psi.amps) - 1) < 1e-12
        assert psi.tail_mass() < 1e-12

    def test_auto_dimension_rule(self):
        # starts at ceil(|a|^2 + 10|a| + 20); grows only if the tail demands it
        assert required_dim(0) == 20
        assert required_dim(1.0) == 31
        for a in (0.5, 2, 6, 12):
            d = required_dim(a)
            assert d >= math.ceil(a * a + 10 * a + 20)
            assert poisson_tail(a, d) < 1e-12

    def test_too_large_alpha(self):
        with pytest.raises(TruncationError) as info:
            coherent_space(12.5)
        assert info.value.required_dim == math.ceil(12.5**2 + 125 + 20)
        assert "dim" in str(info.value)

    def test_space_too_small(self):
        with pytest.raises(TruncationError) as info:
            coherent(FockSpace(10), 2.0)
        assert info.value.required_dim == required_dim(2.0)

    def test_nonfinite(self):
        with pytest.raises(ValueError):
            CoherentParams(complex("nan"))


class TestOtherStates:
    def test_superposition_normalized(self):
        psi = superposition(FockSpace(8), [1, 1j])
        np.testing.assert_allclose(psi.amps[:2], [1 / math.sqrt(2), 1j / math.sqrt(2)])

    def test_superposition_too_long(self):
        with pytest.raises(TruncationError):
            superposition(FockSpace(2), [1, 0, 1])

    def test_random_state_support(self, rng):
        psi = random_state(FockSpace(20), rng, support=4)
        assert np.all(psi.amps[4:] == 0)
        assert psi.tail_mass() == 0


GRID = Grid(100.0, 4096)


class TestGaussianPacket:
    def test_unit_variance(self):
        psi = gaussian_packet_state(GaussianPacket(1.0, 0.0, 0.0, 1.0, GRID))
        assert psi.norm == pytest.approx(1, abs=1e-12)
        mean, var = psi.position_moments()
        assert abs(mean) < 1e-12
        assert var == pytest.approx(1, abs=1e-6)

    def test_momentum_mean(self):
        psi = gaussian_packet_state(GaussianPacket(1.0, 0.0, 2.0, 1.0, GRID))
        assert psi.momentum_moments()[0] == pytest.approx(2, abs=1e-6)

    @pytest.mark.parametrize("sigma,hbar", [(1.0, 1.0), (0.7, 1.0), (2.0, 0.5)])
    def test_minimum_product(self, sigma, hbar):
        psi = gaussian_packet_state(GaussianPacket(sigma, 1.0, -1.0, 1.0, GRID, hbar))
        mp, p2 = psi.momentum_moments()
        dx = math.sqrt(psi.position_moments()[1])
        assert dx * math.sqrt(p2 - mp**2) == pytest.approx(hbar / 2, abs=1e-6)

    @pytest.mark.parametrize("sigma,p0", [(0.8, 1.5), (2.0, -3.0)])
    def test_grid_independence(self, sigma, p0):
        coarse = gaussian_packet_state(GaussianPacket(sigma, 0.5, p0, 1.0, Grid(80.0, 2048)))
        fine = gaussian_packet_state(GaussianPacket(sigma, 0.5, p0, 1.0, Grid(80.0, 4096)))
        for a, b in zip(coarse.position_moments() + coarse.momentum_moments(),
                        fine.position_moments() + fine.momentum_moments()):
            assert abs(a - b) < 1e-8

    def test_resolution_guard(self):
        with pytest.raises(GridError):
            GaussianPacket(2 * GRID.dx, 0, 0, 1, GRID)

    def test_boundary_guard(self):
        with pytest.raises(GridError):
            GaussianPacket(2.0, 45.0, 0, 1, GRID)

    def test_power_of_two(self):
        with pytest.raises(GridError):
            Grid(10.0, 1000)
