"""Noise channels, accumulation laws, and the QEC-filtered logical channel."""

import math
from fractions import Fraction

import numpy as np
import pytest

from swapmet.channels import (
    LogicalPauliChannel,
    PauliChannelSpec,
    accumulate_rate,
    compose_channel,
    decoder_matched_channel,
    dephase_logical,
    p_odd,
    qec_effective_channel,
    residual_x_rate,
)
from swapmet.logical import LogicalState, ghz_probe, purity


class TestPauliChannelSpec:
    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum"):
            PauliChannelSpec(0.5, 0.5, 0.5, 0.0)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="p_x"):
            PauliChannelSpec(0.8, 1.2, 0.0, 0.0)
        with pytest.raises(ValueError, match="p_i"):
            PauliChannelSpec(-0.1, 0.5, 0.3, 0.3)

    def test_bit_then_phase_composition(self):
        # Composing E_z after E_x produces Y with probability p_x*p_z.
        spec = PauliChannelSpec.bit_then_phase(0.2, 0.3)
        assert spec.p_i == pytest.approx(0.8 * 0.7)
        assert spec.p_x == pytest.approx(0.2 * 0.7)
        assert spec.p_y == pytest.approx(0.2 * 0.3)
        assert spec.p_z == pytest.approx(0.8 * 0.3)

    def test_symmetric_and_dephasing(self):
        assert PauliChannelSpec.symmetric(0.01).error_weight() == pytest.approx(0.03)
        spec = PauliChannelSpec.dephasing(0.25)
        assert (spec.p_x, spec.p_y, spec.p_z) == (0.0, 0.0, 0.25)


class TestAccumulation:
    def test_accumulate_rate_law(self):
        assert accumulate_rate(0.0005, 1) == pytest.approx(0.0005)
        assert accumulate_rate(0.0005, 100) == pytest.approx(1 - 0.9995**100, abs=1e-15)
        assert accumulate_rate(0.3, 0) == 0.0

    def test_parity_coherence_identity(self):
        # (1 - 2 p_odd(n, accumulated)) == (2(1-p1)^t - 1)^n.
        for n, p1, t in [(3, 0.0005, 100), (5, 0.002, 37), (2, 0.01, 250)]:
            lhs = 1 - 2 * p_odd(n, accumulate_rate(p1, t))
            rhs = (2 * (1 - p1) ** t - 1) ** n
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_p_odd_values(self):
        assert p_odd(1, 0.3) == pytest.approx(0.3)
        assert p_odd(3, 0.5) == pytest.approx(0.5)
        assert p_odd(2, 0.1) == pytest.approx(2 * 0.1 * 0.9)

    def test_dephase_logical_purity(self):
        state = dephase_logical(ghz_probe(), 0.244)
        assert purity(state) == pytest.approx(0.631072, abs=1e-12)


class TestResidualXRate:
    def test_pinned_value(self):
        assert residual_x_rate(3, 0.0005) == pytest.approx(7.4975e-7, rel=1e-6)

    def test_trivial_cases(self):
        assert residual_x_rate(7, 0.0) == 0.0
        assert residual_x_rate(1, 0.3) == pytest.approx(0.3)

    def test_monotone_in_odd_n(self):
        for p in (0.001, 0.05, 0.3, 0.49):
            rates = [residual_x_rate(n, p) for n in range(1, 16, 2)]
            assert all(a >= b for a, b in zip(rates, rates[1:]))

    def test_exact_against_fraction_sum(self):
        # Independent oracle: direct Fraction-weighted enumeration of
        # flip counts.
        n, p = 4, 0.125
        pf = Fraction(1, 8)
        expected = sum(
            math.comb(n, k) * pf**k * (1 - pf) ** (n - k) for k in range(2, n + 1)
        )
        assert residual_x_rate(n, p) == pytest.approx(float(expected), abs=1e-18)


class TestEffectiveChannel:
    def test_pinned_failure_rates(self):
        cases = [
            (3, 0.0001, 1.20e-7, 0.01),
            (3, 0.0025, 7.48e-5, 0.01),
            (8, 0.0001, 1.12e-13, 0.02),
            (8, 0.0025, 4.31e-8, 0.02),
        ]
        for n, p1, expected, rel in cases:
            channel = qec_effective_channel(n, PauliChannelSpec.symmetric(p1))
            assert channel.failure_rate() == pytest.approx(expected, rel=rel)

    def test_pure_dephasing_reduction(self):
        for n in (1, 2, 3, 6):
            channel = qec_effective_channel(n, PauliChannelSpec.dephasing(0.07))
            assert channel.q_x == 0.0
            assert channel.q_xz == 0.0
            assert channel.q_z == pytest.approx(p_odd(n, 0.07), abs=1e-15)

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            rates = rng.uniform(0, 0.2, size=3)
            spec = PauliChannelSpec.from_error_rates(*rates)
            n = int(rng.integers(1, 9))
            ch = qec_effective_channel(n, spec)
            assert ch.q_i + ch.q_x + ch.q_z + ch.q_xz == pytest.approx(1.0, abs=1e-12)

    def test_decoder_matched_equals_closed_form_for_odd_n(self):
        spec = PauliChannelSpec.from_error_rates(0.03, 0.01, 0.05)
        for n in (1, 3, 5, 7):
            a = qec_effective_channel(n, spec)
            b = decoder_matched_channel(n, spec)
            assert (a.q_i, a.q_x, a.q_z, a.q_xz) == (b.q_i, b.q_x, b.q_z, b.q_xz)

    def test_even_n_discrepancy_is_half_the_tie_mass(self):
        # The closed form counts every weight-n/2 flip pattern as a
        # failure; a real decoder rescues exactly half of that mass.
        spec = PauliChannelSpec.from_error_rates(0.04, 0.02, 0.03)
        for n in (2, 4, 6):
            pess = qec_effective_channel(n, spec)
            dec = decoder_matched_channel(n, spec)
            flip = spec.p_x + spec.p_y
            keep = spec.p_i + spec.p_z
            tie_mass = math.comb(n, n // 2) * flip ** (n // 2) * keep ** (n // 2)
            rescued = (pess.q_x + pess.q_xz) - (dec.q_x + dec.q_xz)
            assert rescued == pytest.approx(tie_mass / 2, rel=1e-12)
            assert (dec.q_i + dec.q_z) - (pess.q_i + pess.q_z) == pytest.approx(
                tie_mass / 2, rel=1e-12
            )

    def test_apply_matches_explicit_conjugation(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        z = np.diag([1.0, -1.0]).astype(complex)
        ch = LogicalPauliChannel(0.7, 0.1, 0.15, 0.05)
        rho = ghz_probe().matrix
        expected = (
            0.7 * rho
            + 0.1 * x @ rho @ x
            + 0.15 * z @ rho @ z
            + 0.05 * x @ z @ rho @ z @ x
        )
        assert np.allclose(ch.apply(LogicalState(rho)).matrix, expected)


class TestComposeChannel:
    def test_dephasing_only_law(self):
        # q_Z-only channel composes to q_Z(t) = (1 - (1-2p)^t)/2.
        p = 0.013
        base = LogicalPauliChannel(1 - p, 0.0, p, 0.0)
        for t in (0, 1, 2, 7, 40):
            composed = compose_channel(base, t)
            assert composed.q_z == pytest.approx(0.5 * (1 - (1 - 2 * p) ** t), abs=1e-14)
            assert composed.q_x == pytest.approx(0.0, abs=1e-14)

    def test_matches_repeated_application(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            q = rng.dirichlet(np.ones(4))
            base = LogicalPauliChannel(*q)
            t = int(rng.integers(0, 9))
            composed = compose_channel(base, t)
            vec = rng.normal(size=2) + 1j * rng.normal(size=2)
            state = LogicalState.from_vector(vec)
            stepped = state
            for _ in range(t):
                stepped = base.apply(stepped)
            assert np.allclose(composed.apply(state).matrix, stepped.matrix, atol=1e-12)

    def test_t_zero_is_identity(self):
        base = LogicalPauliChannel(0.4, 0.3, 0.2, 0.1)
        ident = compose_channel(base, 0)
        assert ident.q_i == pytest.approx(1.0)
