"""Swap-test distribution, sampling, and moment estimation."""

import math

import numpy as np
import pytest

from swapmet.channels import dephase_logical
from swapmet.logical import (
    HamiltonianKind,
    HamiltonianSpec,
    LogicalObservable,
    LogicalState,
    ObservableKind,
    evolve,
    ghz_probe,
    purity,
    restrict_observable,
)
from swapmet.swaptest import (
    OUTCOMES,
    MomentEstimates,
    ShotRecord,
    SwapDistribution,
    estimate_moments,
    exact_moments,
    joint_distribution,
    sample_shots,
)

GHZ_Y = restrict_observable(ObservableKind.GHZ_Y_PROJECTOR, 3)


def random_logical_state(rng):
    """Random mixed 2x2 density matrix (Hilbert-Schmidt-ish draw)."""
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = a @ a.conj().T
    return LogicalState(rho / np.trace(rho).real)


class TestJointDistribution:
    def test_moment_identities_on_random_states(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            state = random_logical_state(rng)
            dist = joint_distribution(state, GHZ_Y)
            m = exact_moments(dist)
            rho = state.matrix
            a_true = np.trace(GHZ_Y.matrix @ rho).real
            assert m.x_mean == pytest.approx(purity(state), abs=1e-12)
            assert m.a_mean == pytest.approx(a_true, abs=1e-12)
            assert m.xa_mean == pytest.approx(
                np.trace(GHZ_Y.matrix @ rho @ rho).real, abs=1e-12
            )
            # Copy outcomes are uncorrelated: E[a2 a3] = E[a]^2.
            probs = dist.as_mapping()
            e_a2a3 = sum(p * a2 * a3 for (x, a2, a3), p in probs.items())
            assert e_a2a3 == pytest.approx(a_true**2, abs=1e-12)

    def test_pure_unbiased_state_is_uniform_on_x_plus(self):
        # Purity 1 and <A> = 0: the four x=+1 outcomes each carry 1/4.
        state = LogicalState.from_vector((1.0, 0.0))
        dist = joint_distribution(state, GHZ_Y)
        for (x, _, _), p in dist.as_mapping().items():
            assert p == pytest.approx(0.25 if x == 1 else 0.0, abs=1e-12)

    def test_dephased_probe_purity_value(self):
        state = dephase_logical(ghz_probe(), 0.244)
        m = exact_moments(joint_distribution(state, GHZ_Y))
        assert m.x_mean == pytest.approx(0.631072, abs=1e-12)

    def test_xa_equals_a_under_dephasing(self):
        # Off-diagonal observables make tr(A rho^2) = tr(A rho) for
        # dephased pure probes: exactly the swap method's working point.
        spec = HamiltonianSpec(HamiltonianKind.SINGLE_PARAM_Z, 3, (0.001,))
        psi = evolve(ghz_probe(), spec, 150)
        state = dephase_logical(psi, 0.31)
        m = exact_moments(joint_distribution(state, GHZ_Y))
        assert m.xa_mean == pytest.approx(m.a_mean, abs=1e-12)

    def test_rejects_non_binary_observable(self):
        skewed = LogicalObservable(np.diag([1.0, 0.0]))
        with pytest.raises(ValueError, match="eigenvalues"):
            joint_distribution(ghz_probe(), skewed)

    def test_distribution_validation(self):
        with pytest.raises(ValueError, match="8 outcome"):
            SwapDistribution(np.ones(5) / 5)
        with pytest.raises(ValueError, match="sum"):
            SwapDistribution(np.ones(8))


class TestSampling:
    def test_replaying_seed_reproduces_record(self):
        dist = joint_distribution(dephase_logical(ghz_probe(), 0.1), GHZ_Y)
        a = sample_shots(dist, 500, 123)
        b = sample_shots(dist, 500, 123)
        assert np.array_equal(a.shots, b.shots)
        assert a.seed == (123,)
        c = sample_shots(dist, 500, (123, 4, 1))
        assert not np.array_equal(a.shots, c.shots)

    def test_point_mass_sampling(self):
        probs = np.zeros(8)
        probs[OUTCOMES.index((1, 1, 1))] = 1.0
        record = sample_shots(SwapDistribution(probs), 10, 7)
        assert np.array_equal(record.shots, np.ones((10, 3), dtype=np.int8))

    def test_uniform_frequencies_within_5_sigma(self):
        dist = SwapDistribution(np.full(8, 0.125))
        record = sample_shots(dist, 10**6, 42)
        table = np.array(OUTCOMES, dtype=np.int8)
        sigma = math.sqrt(0.125 * 0.875 / 10**6)
        for row in table:
            freq = np.mean((record.shots == row).all(axis=1))
            assert abs(freq - 0.125) < 5 * sigma

    def test_moments_concentrate(self):
        # Each sample moment lands within 5/sqrt(nu) of the exact one in
        # the large majority of seeded runs (CLT with variance <= 1).
        state = dephase_logical(
            evolve(ghz_probe(), HamiltonianSpec(HamiltonianKind.SINGLE_PARAM_Z, 3, (0.001,)), 200),
            0.05,
        )
        dist = joint_distribution(state, GHZ_Y)
        exact = exact_moments(dist)
        nu = 10**4
        misses = 0
        for seed in range(100):
            m = estimate_moments(sample_shots(dist, nu, (77, seed)))
            tol = 5.0 / math.sqrt(nu)
            if (
                abs(m.a_mean - exact.a_mean) > tol
                or abs(m.x_mean - exact.x_mean) > tol
                or abs(m.xa_mean - exact.xa_mean) > tol
            ):
                misses += 1
        assert misses <= 1

    def test_empirical_a_variance_bound(self):
        # Var(A_hat) <= 1/(2 nu): both copies contribute, each bounded by 1.
        state = dephase_logical(ghz_probe(), 0.2)
        dist = joint_distribution(state, GHZ_Y)
        nu = 2000
        estimates = [
            estimate_moments(sample_shots(dist, nu, (5, k))).a_mean for k in range(300)
        ]
        empirical = float(np.var(estimates, ddof=1))
        assert empirical <= (1.0 / (2 * nu)) * (1 + 5 / math.sqrt(300))


class TestMomentEstimates:
    def test_all_plus_record(self):
        record = ShotRecord(np.ones((4, 3), dtype=np.int8), (0,))
        m = estimate_moments(record)
        assert (m.a_mean, m.x_mean, m.xa_mean) == (1.0, 1.0, 1.0)
        assert m.nu == 4

    def test_handcrafted_counts(self):
        shots = np.array(
            [
                [1, 1, -1],
                [-1, 1, 1],
                [1, -1, -1],
            ],
            dtype=np.int8,
        )
        m = estimate_moments(ShotRecord(shots, (1,)))
        assert m.a_mean == pytest.approx((0.0 + 1.0 - 1.0) / 3)
        assert m.x_mean == pytest.approx((1 - 1 + 1) / 3)
        assert m.xa_mean == pytest.approx((0.0 - 1.0 - 1.0) / 3)

    def test_record_validation(self):
        with pytest.raises(ValueError, match="shape"):
            ShotRecord(np.ones((3, 2), dtype=np.int8), (0,))
        with pytest.raises(ValueError, match="\\+1 or -1"):
            ShotRecord(np.zeros((3, 3), dtype=np.int8), (0,))

    def test_moment_range_validation(self):
        with pytest.raises(ValueError, match="a_mean"):
            MomentEstimates(1.5, 0.0, 0.0, None)
