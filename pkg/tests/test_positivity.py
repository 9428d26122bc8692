import math

import numpy as np
import pytest

from rtnqubit import (
    CP_TOLERANCE,
    MU_STAR_BOUND,
    ModelParams,
    bell_projector,
    choi_matrix,
    critical_flip_parameter,
    hermitian_eigenvalues,
    is_cp,
    markov_cp_check,
    markov_rates,
    relaxation_profile,
    scan_horizon,
    sufficient_condition,
    xi,
)

RNG = np.random.default_rng(99)


def random_params(rng, scale=3.0):
    return ModelParams(a=tuple(rng.uniform(0.0, scale, 3)), tau=rng.uniform(0.05, 2.0))


def equal_coupling_params(mu, tau=1.0):
    """All three frequencies equal to mu: a_i = sqrt((mu^2+1)/32) / tau."""
    a = math.sqrt((mu * mu + 1.0) / 32.0) / tau
    return ModelParams(a=(a, a, a), tau=tau)


class TestXi:
    def test_identity_channel_at_origin(self):
        p = random_params(RNG)
        assert np.array_equal(xi(0.0, p), [0.0, 0.0, 0.0, 1.0])

    def test_components_sum_to_one(self):
        for _ in range(100):
            p = random_params(RNG)
            values = xi(RNG.uniform(0.0, 6.0), p)
            assert abs(values.sum() - 1.0) <= 1e-12

    def test_dephasing_form(self):
        p = ModelParams(a=(0.0, 0.0, 1.2), tau=1.0)
        for nu in (0.3, 1.0, 4.0):
            profile = relaxation_profile(nu, 1.2)
            x = xi(nu, p)
            assert x[0] == 0.0 and x[1] == 0.0
            assert x[2] == pytest.approx((1.0 - profile) / 2.0, abs=1e-15)
            assert x[3] == pytest.approx((1.0 + profile) / 2.0, abs=1e-15)

    def test_equal_frequencies_at_half_period(self):
        # with all mu_i = mu, xi_4(pi/mu) = (1 - 3 exp(-pi/mu)) / 4
        for mu in (1.5, MU_STAR_BOUND, 4.0):
            p = equal_coupling_params(mu)
            value = xi(math.pi / mu, p)[3]
            assert value == pytest.approx((1.0 - 3.0 * math.exp(-math.pi / mu)) / 4.0, abs=1e-12)

    def test_vectorized_shape(self):
        p = random_params(RNG)
        out = xi(np.linspace(0.0, 3.0, 17), p)
        assert out.shape == (4, 17)


class TestChoiMatrix:
    def test_identity_channel_gives_bell_projector(self):
        p = random_params(RNG)
        assert np.max(np.abs(choi_matrix(p, 0.0) - bell_projector())) < 1e-15

    def test_spectrum_equals_xi(self):
        for _ in range(200):
            p = random_params(RNG)
            nu = RNG.uniform(0.0, 6.0)
            evals = hermitian_eigenvalues(choi_matrix(p, nu))
            assert np.max(np.abs(evals - np.sort(xi(nu, p)))) < 1e-10

    def test_unit_trace(self):
        for _ in range(100):
            p = random_params(RNG)
            c = choi_matrix(p, RNG.uniform(0.0, 6.0))
            assert abs(np.trace(c) - 1.0) < 1e-12

    def test_hermitian(self):
        for _ in range(20):
            c = choi_matrix(random_params(RNG), RNG.uniform(0.0, 6.0))
            assert np.max(np.abs(c - c.conj().T)) < 1e-14

    def test_rejects_negative_nu(self):
        with pytest.raises(ValueError):
            choi_matrix(random_params(RNG), -1.0)


class TestIsCp:
    def test_dephasing_always_cp(self):
        for a_tau in (0.1, 1.0, 10.0, 100.0):
            p = ModelParams(a=(0.0, 0.0, a_tau), tau=1.0)
            assert is_cp(p).is_cp

    def test_two_axis_threshold(self):
        assert is_cp(ModelParams(a=(0.5, 0.5, 0.0), tau=1.0)).is_cp
        verdict = is_cp(ModelParams(a=(1.2, 1.2, 0.0), tau=1.0))
        assert not verdict.is_cp

    def test_identity_map_cp(self):
        assert is_cp(ModelParams(a=(0.0, 0.0, 0.0), tau=1.0)).is_cp

    def test_witness_reproducible_by_direct_evaluation(self):
        verdict = is_cp(ModelParams(a=(1.2, 1.2, 0.0), tau=1.0))
        w = verdict.witness
        assert w is not None
        direct = float(xi(w.nu, ModelParams(a=(1.2, 1.2, 0.0), tau=1.0))[w.index - 1])
        assert direct == pytest.approx(w.value, rel=1e-12)
        assert direct < -CP_TOLERANCE

    def test_deterministic(self):
        p = ModelParams(a=(1.2, 1.2, 0.0), tau=1.0)
        v1, v2 = is_cp(p), is_cp(p)
        assert v1.is_cp == v2.is_cp
        assert v1.witness.nu == v2.witness.nu
        assert v1.witness.value == v2.witness.value

    def test_verdict_matches_dense_rescan(self):
        # soundness: a brute-force dense scan over twice the horizon finds
        # no violation the certified scan missed (and vice versa)
        for a in ((0.3, 0.7, 0.2), (1.2, 1.2, 0.0), (0.9, 0.4, 0.1), (2.0, 2.0, 2.0)):
            p = ModelParams(a=a, tau=1.0)
            verdict = is_cp(p)
            nus = np.linspace(0.0, 2.0 * verdict.horizon, 40_001)
            brute_min = float(xi(nus, p).min())
            assert verdict.is_cp == (brute_min >= -1e-6), (a, brute_min)

    def test_scan_horizon_positive_and_finite(self):
        for _ in range(20):
            h = scan_horizon(random_params(RNG))
            assert np.isfinite(h) and h >= 1.0

    def test_fuzz_against_brute_force(self):
        rng = np.random.default_rng(271828)
        for _ in range(30):
            p = random_params(rng)
            verdict = is_cp(p)
            nus = np.linspace(0.0, min(verdict.horizon, 60.0), 100_001)
            brute = float(xi(nus, p).min())
            assert verdict.is_cp == (brute >= -1e-7), (p, verdict, brute)


class TestCriticalFlipParameter:
    def test_two_axis_boundary(self):
        boundary = critical_flip_parameter((1.0, 1.0, 0.0), tau=1.0)
        assert boundary == pytest.approx(0.8, abs=0.05)

    def test_boundary_independent_of_tau(self):
        b1 = critical_flip_parameter((1.0, 1.0, 0.0), tau=0.5)
        b2 = critical_flip_parameter((1.0, 1.0, 0.0), tau=2.0)
        assert b1 == pytest.approx(b2, abs=2e-3)

    def test_dephasing_has_no_boundary(self):
        assert critical_flip_parameter((0.0, 0.0, 1.0), tau=1.0) is None

    def test_degenerate_direction_rejected(self):
        with pytest.raises(ValueError):
            critical_flip_parameter((0.0, 0.0, 0.0), tau=1.0)

    def test_equal_coupling_boundary_respects_sufficient_bound(self):
        # sufficiency says the boundary cannot sit below the frequency bound
        boundary = critical_flip_parameter((1.0, 1.0, 1.0), tau=1.0)
        p = ModelParams(a=(boundary, boundary, boundary), tau=1.0)
        mu_max = math.sqrt(float(np.max(p.mu_squared)))
        assert mu_max >= MU_STAR_BOUND - 0.01
        # for three equal frequencies the bound is tight, so the boundary
        # lands where max mu equals pi/ln 3
        assert boundary == pytest.approx(math.sqrt((MU_STAR_BOUND**2 + 1.0) / 32.0), abs=2e-3)


class TestSufficientCondition:
    def test_bound_value(self):
        assert MU_STAR_BOUND == pytest.approx(2.85960, abs=1e-4)

    def test_low_frequencies_guarantee_cp(self):
        p = equal_coupling_params(2.0)
        assert sufficient_condition(p)
        assert is_cp(p).is_cp

    def test_high_frequencies_not_guaranteed(self):
        assert not sufficient_condition(equal_coupling_params(3.5))

    def test_boundary_case(self):
        p = equal_coupling_params(MU_STAR_BOUND)
        assert sufficient_condition(p)
        assert abs(xi(math.pi / MU_STAR_BOUND, p)[3]) < 1e-12

    def test_pure_damping_trivially_satisfies(self):
        p = random_params(RNG, scale=0.05)
        assert np.all(p.mu_squared < 0.0)
        assert sufficient_condition(p)


class TestMarkovCpCheck:
    def test_equilateral(self):
        assert markov_cp_check((1.0, 1.0, 1.0))

    def test_violated_triangle(self):
        assert not markov_cp_check((3.0, 1.0, 1.0))

    def test_rates_from_model_always_pass(self):
        # gamma_j + gamma_k - gamma_i = 8 a_i^2 tau >= 0 identically
        for _ in range(200):
            assert markov_cp_check(markov_rates(random_params(RNG)))

    def test_validation(self):
        with pytest.raises(ValueError):
            markov_cp_check((1.0, -1.0, 1.0))
        with pytest.raises(ValueError):
            markov_cp_check((1.0, 1.0))
