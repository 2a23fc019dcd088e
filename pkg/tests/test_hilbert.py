import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import eval_hermite

from photonbox import (
    FockSpace,
    OperatorMatrix,
    StateVector,
    build_ladder,
    coherent,
    coherent_space,
    expectation,
    fock,
    observables,
    random_state,
    robertson_gap,
    variance,
    variance_of_function_counterexample,
)
from photonbox.errors import DimensionMismatchError, HermiticityError, NormalizationError


def hermite_moment(n, k):
    """<q^k> in the n-th Hermite function, q dimensionless (hbar = m = omega = 1).

    Independent of the ladder-matrix construction; used for both x and p,
    which share this form in the oscillator.
    """
    norm = 1.0 / math.sqrt(2**n * math.factorial(n) * math.sqrt(math.pi))

    def integrand(q):
        return q**k * (norm * eval_hermite(n, q) * math.exp(-q * q / 2)) ** 2

    return quad(integrand, -np.inf, np.inf, epsabs=1e-14, epsrel=1e-13)[0]


def poisson_mean(alpha):
    mu = abs(alpha) ** 2
    return sum(n * math.exp(-mu) * mu**n / math.factorial(n) for n in range(120))


class TestFockSpace:
    @pytest.mark.parametrize("kw", [dict(dim=1), dict(dim=5, mass=0), dict(dim=5, omega=-1),
                                    dict(dim=5, hbar=0), dict(dim=2.5)])
    def test_rejects_invalid(self, kw):
        with pytest.raises(ValueError):
            FockSpace(**kw)

    def test_defaults_are_natural_units(self):
        s = FockSpace(3)
        assert (s.mass, s.omega, s.hbar) == (1.0, 1.0, 1.0)


class TestLadder:
    def test_dim2(self):
        a, ad = build_ladder(FockSpace(2))
        np.testing.assert_array_equal(a.entries, [[0, 1], [0, 0]])
        np.testing.assert_array_equal(ad.entries, [[0, 0], [1, 0]])

    def test_number_spectrum_dim3(self):
        a, ad = build_ladder(FockSpace(3))
        np.testing.assert_allclose(np.diag((ad @ a).entries).real, [0, 1, 2])

    def test_canonical_commutator_away_from_top(self):
        a, ad = build_ladder(FockSpace(40))
        comm = (a @ ad).entries - (ad @ a).entries
        defect = np.abs(comm - np.eye(40))[:35]
        assert defect.max() < 1e-12
        # the truncation corner is where it breaks
        assert abs(comm[39, 39] - 1) > 1

    def test_raise_is_adjoint(self):
        a, ad = build_ladder(FockSpace(7))
        np.testing.assert_array_equal(ad.entries, a.entries.conj().T)


class TestObservables:
    def test_p_dim2(self):
        p = observables(FockSpace(2))["p"]
        np.testing.assert_allclose(p.entries, 1j * math.sqrt(0.5) * np.array([[0, -1], [1, 0]]))

    def test_hamiltonian_spectrum(self):
        H = observables(FockSpace(4))["H"]
        np.testing.assert_allclose(np.diag(H.entries).real, [0.5, 1.5, 2.5, 3.5])
        assert np.count_nonzero(H.entries - np.diag(np.diag(H.entries))) == 0

    @pytest.mark.parametrize("dim,m,w,hbar", [(2, 1, 1, 1), (30, 2.5, 0.3, 1), (64, 1e-3, 7, 0.5)])
    def test_all_hermitian(self, dim, m, w, hbar):
        for op in observables(FockSpace(dim, m, w, hbar)).values():
            assert op.hermitian
            assert np.abs(op.entries - op.entries.conj().T).max() < 1e-12

    @pytest.mark.parametrize("m,w,hbar", [(1, 1, 1), (2, 3, 0.7)])
    def test_ground_state_quadrature_sum(self, m, w, hbar):
        space = FockSpace(30, m, w, hbar)
        ops = observables(space)
        q = ops["x"] @ ops["x"] + (ops["p"] @ ops["p"]) / (m * w) ** 2
        val = expectation(fock(space, 0), q)
        assert val.real == pytest.approx(hbar / (m * w), rel=1e-12)


class TestExpectation:
    def test_vacuum_number(self, natural40):
        assert expectation(fock(natural40, 0), observables(natural40)["N"]) == 0

    def test_coherent_number_poisson(self):
        space = coherent_space(1.0)
        val = expectation(coherent(space, 1.0), observables(space)["N"])
        assert abs(val - poisson_mean(1.0)) < 1e-10
        assert abs(val.imag) < 1e-10

    def test_parity(self, natural40):
        assert abs(expectation(fock(natural40, 1), observables(natural40)["x"])) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            expectation(fock(FockSpace(5), 0), observables(FockSpace(6))["N"])

    def test_parameter_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            expectation(fock(FockSpace(5), 0), observables(FockSpace(5, mass=2))["N"])

    def test_hermitian_gives_real(self, natural40, rng):
        psi = random_state(natural40, rng)
        for op in observables(natural40).values():
            assert abs(expectation(psi, op).imag) < 1e-10


class TestVariance:
    def test_ground_momentum(self):
        space = FockSpace(20, mass=3.0, omega=0.5, hbar=1.0)
        rep = variance(fock(space, 0), observables(space)["p"])
        assert rep.variance == pytest.approx(3.0 * 0.5 / 2, rel=1e-12)

    def test_coherent_energy(self):
        space = coherent_space(0.5)
        rep = variance(coherent(space, 0.5), observables(space)["H"])
        assert rep.variance == pytest.approx(0.25, rel=1e-10)

    def test_eigenstate_zero(self, natural40):
        rep = variance(fock(natural40, 3), observables(natural40)["H"])
        assert rep.variance == 0 and rep.sigma == 0

    def test_report_invariants(self, natural40, rng):
        psi = random_state(natural40, rng)
        for op in observables(natural40).values():
            rep = variance(psi, op)
            assert rep.variance == pytest.approx(rep.second_moment - rep.mean**2,
                                                 rel=1e-10, abs=1e-10 * rep.second_moment)
            assert rep.sigma == pytest.approx(math.sqrt(max(rep.variance, 0)))

    def test_non_hermitian_rejected(self, natural40):
        a, _ = build_ladder(natural40)
        with pytest.raises(HermiticityError):
            variance(fock(natural40, 1), a)

    @pytest.mark.parametrize("n", range(6))
    def test_fock_moments_match_hermite_quadrature(self, n):
        space = FockSpace(20)
        ops = observables(space)
        psi = fock(space, n)
        # with hbar = m = omega = 1 both x and p are the Hermite variable q
        assert variance(psi, ops["x"]).variance == pytest.approx(hermite_moment(n, 2), rel=1e-10)
        assert variance(psi, ops["p"]).variance == pytest.approx(hermite_moment(n, 2), rel=1e-10)

    @pytest.mark.parametrize("alpha", [0.2, 1.5 + 0.5j, 3j])
    def test_truncation_convergence(self, alpha):
        space = coherent_space(alpha)
        base = variance(coherent(space, alpha), observables(space)["H"]).variance
        bigger = space.with_dim(space.dim + 10)
        grown = variance(coherent(bigger, alpha), observables(bigger)["H"]).variance
        assert abs(grown - base) <= 1e-10 * base


class TestRobertson:
    def test_ground_saturates(self, natural40):
        ops = observables(natural40)
        assert abs(robertson_gap(fock(natural40, 0), ops["x"], ops["p"])) < 1e-9

    def test_fock5(self, natural40):
        ops = observables(natural40)
        psi = fock(natural40, 5)
        dx, dp = variance(psi, ops["x"]).sigma, variance(psi, ops["p"]).sigma
        assert dx * dp == pytest.approx(5.5, abs=1e-8)
        assert robertson_gap(psi, ops["x"], ops["p"]) == pytest.approx(5.0, abs=1e-8)

    def test_random_states(self, rng):
        for _ in range(1000):
            space = FockSpace(int(rng.integers(8, 40)))
            psi = random_state(space, rng, support=int(rng.integers(1, space.dim - 4)))
            ops = observables(space)
            assert robertson_gap(psi, ops["x"], ops["p"]) >= -1e-9

    @settings(max_examples=60, deadline=None)
    @given(st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False))
    def test_coherent_saturates(self, alpha):
        space = coherent_space(alpha)
        ops = observables(space)
        assert abs(robertson_gap(coherent(space, alpha), ops["x"], ops["p"])) < 1e-9

    def test_generic_pair_nonnegative(self, natural40, rng):
        ops = observables(natural40)
        for _ in range(50):
            psi = random_state(natural40, rng)
            assert robertson_gap(psi, ops["x"], ops["N"]) >= -1e-9
            assert robertson_gap(psi, ops["p"], ops["H"]) >= -1e-9

    def test_requires_hermitian(self, natural40):
        a, ad = build_ladder(natural40)
        with pytest.raises(HermiticityError):
            robertson_gap(fock(natural40, 0), a, ad)


class TestFunctionVariance:
    def test_ground_state(self, natural40):
        res = variance_of_function_counterexample(natural40, fock(natural40, 0))
        # <p^2> = 1/2, <p^4> = 3/4 by quadrature
        p2, p4 = hermite_moment(0, 2), hermite_moment(0, 4)
        assert res.lhs == pytest.approx(math.sqrt(p4 - p2**2) / 2, rel=1e-10)
        assert res.rhs == pytest.approx(0.25, rel=1e-12)
        assert res.differ

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_fock_states(self, n, natural40):
        res = variance_of_function_counterexample(natural40, fock(natural40, n))
        p2, p4 = hermite_moment(n, 2), hermite_moment(n, 4)
        assert res.lhs == pytest.approx(math.sqrt(p4 - p2**2) / 2, rel=1e-9)
        assert res.rhs == pytest.approx(p2 / 2, rel=1e-10)
        assert res.differ

    def test_unit_vector_input(self):
        space = FockSpace(12)
        res = variance_of_function_counterexample(space, StateVector(space, np.eye(12)[0]))
        assert res.rhs == pytest.approx(0.25)


class TestContainers:
    def test_state_must_be_normalized(self):
        with pytest.raises(NormalizationError):
            StateVector(FockSpace(3), [1, 1, 0])

    def test_state_is_immutable(self, natural40):
        psi = fock(natural40, 0)
        with pytest.raises(ValueError):
            psi.amps[0] = 2

    def test_hermitian_flag_checked(self):
        with pytest.raises(HermiticityError):
            OperatorMatrix(FockSpace(2), [[0, 1], [0, 0]], hermitian=True)

    def test_of_infers_flag(self):
        assert OperatorMatrix.of(FockSpace(2), [[1, 2j], [-2j, 0]]).hermitian
        assert not OperatorMatrix.of(FockSpace(2), [[0, 1], [0, 0]]).hermitian
