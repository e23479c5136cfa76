"""Pauli noise channels and their action through a repetition-code round.

The physical model is iid single-qubit Pauli noise applied between
evolution rounds, followed by a majority-vote bit-flip correction.  On
the codespace the surviving error algebra is generated by the logical
bit flip ``X^(x)n`` (a failed majority vote) and a residual logical
phase flip, so one QEC round compresses to a four-outcome logical Pauli
channel ``(q_i, q_x, q_z, q_xz)``.

All channel probabilities are computed with exact rational arithmetic
(``fractions.Fraction`` + ``math.comb``) and converted to float at the
API boundary; for the n and rates used here this removes rounding noise
entirely, which the enumeration cross-checks rely on.

Tie handling for even n is subtle and documented on
:func:`qec_effective_channel` / :func:`decoder_matched_channel`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .logical import LogicalState

__all__ = [
    "LogicalPauliChannel",
    "PauliChannelSpec",
    "accumulate_rate",
    "compose_channel",
    "decoder_matched_channel",
    "dephase_logical",
    "p_odd",
    "qec_effective_channel",
    "residual_x_rate",
]

_PROB_TOL = 1e-12

_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _check_probability(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class PauliChannelSpec:
    """Single-qubit Pauli channel ``rho -> sum_s p_s s rho s``."""

    p_i: float
    p_x: float
    p_y: float
    p_z: float

    def __post_init__(self) -> None:
        for name in ("p_i", "p_x", "p_y", "p_z"):
            object.__setattr__(self, name, _check_probability(name, getattr(self, name)))
        total = self.p_i + self.p_x + self.p_y + self.p_z
        if abs(total - 1.0) > _PROB_TOL:
            raise ValueError(f"channel probabilities sum to {total!r}, expected 1")

    @classmethod
    def from_error_rates(cls, p_x: float, p_y: float, p_z: float) -> "PauliChannelSpec":
        return cls(1.0 - p_x - p_y - p_z, p_x, p_y, p_z)

    @classmethod
    def dephasing(cls, p_z: float) -> "PauliChannelSpec":
        return cls.from_error_rates(0.0, 0.0, p_z)

    @classmethod
    def symmetric(cls, p1: float) -> "PauliChannelSpec":
        """Equal-rate X/Y/Z noise with per-Pauli probability ``p1``."""
        return cls.from_error_rates(p1, p1, p1)

    @classmethod
    def bit_then_phase(cls, p_x: float, p_z: float) -> "PauliChannelSpec":
        """Independent bit flip (rate p_x) followed by phase flip (rate p_z).

        The composition is again Pauli: X then Z fires combine into Y.
        """
        p_x = _check_probability("p_x", p_x)
        p_z = _check_probability("p_z", p_z)
        return cls(
            (1.0 - p_x) * (1.0 - p_z),
            p_x * (1.0 - p_z),
            p_x * p_z,
            (1.0 - p_x) * p_z,
        )

    def error_weight(self) -> float:
        """Total probability that any Pauli error fires."""
        return self.p_x + self.p_y + self.p_z


@dataclass(frozen=True)
class LogicalPauliChannel:
    """Logical-qubit Pauli channel left over after one QEC round."""

    q_i: float
    q_x: float
    q_z: float
    q_xz: float

    def __post_init__(self) -> None:
        for name in ("q_i", "q_x", "q_z", "q_xz"):
            value = float(getattr(self, name))
            if value < -_PROB_TOL or value > 1.0 + _PROB_TOL:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
            object.__setattr__(self, name, value)
        total = self.q_i + self.q_x + self.q_z + self.q_xz
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"channel probabilities sum to {total!r}, expected 1")

    def apply(self, state: LogicalState) -> LogicalState:
        rho = state.matrix
        out = (
            self.q_i * rho
            + self.q_x * (_X @ rho @ _X)
            + self.q_z * (_Z @ rho @ _Z)
            + self.q_xz * (_X @ _Z @ rho @ _Z @ _X)
        )
        return LogicalState(out)

    def transfer_eigenvalues(self) -> tuple[float, float, float]:
        """Multipliers of the logical (x, y, z) Bloch components."""
        ex = self.q_i + self.q_x - self.q_z - self.q_xz
        ey = self.q_i - self.q_x - self.q_z + self.q_xz
        ez = self.q_i - self.q_x + self.q_z - self.q_xz
        return (ex, ey, ez)

    def failure_rate(self) -> float:
        """Probability of a logical bit flip (majority vote lost)."""
        return self.q_x + self.q_xz


def accumulate_rate(p1: float, t: int) -> float:
    """Per-qubit error probability after ``t`` independent rounds at rate ``p1``.

    A qubit is counted error-free only if no round fired, so
    ``p_t = 1 - (1 - p1)^t``.
    """
    p1 = _check_probability("p1", p1)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    return 1.0 - (1.0 - p1) ** t


def p_odd(n_qubits: int, p_z: float) -> float:
    """Probability of an odd number of phase flips across ``n_qubits``.

    Independent flips at rate ``p_z`` give ``(1 - (1-2 p_z)^n)/2``; only
    the parity matters on the codespace, where any odd-weight Z pattern
    acts as the logical Z.
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    p_z = _check_probability("p_z", p_z)
    return 0.5 * (1.0 - (1.0 - 2.0 * p_z) ** n_qubits)


def dephase_logical(state: LogicalState, p: float) -> LogicalState:
    """Logical dephasing ``rho -> (1-p) rho + p Z rho Z``."""
    p = _check_probability("p", p)
    return LogicalState((1.0 - p) * state.matrix + p * (_Z @ state.matrix @ _Z))


def residual_x_rate(n_qubits: int, p_x: float) -> float:
    """Majority-vote failure probability for iid bit flips at rate ``p_x``.

    Sums the binomial tail at or above ``ceil(n/2)`` flips; for even n
    the exact-half tie is counted as failure (the convention used by the
    closed-form channel, see :func:`qec_effective_channel`).
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    p_x = _check_probability("p_x", p_x)
    threshold = math.ceil(n_qubits / 2)
    p = Fraction(p_x)
    total = Fraction(0)
    for flips in range(threshold, n_qubits + 1):
        total += math.comb(n_qubits, flips) * p**flips * (1 - p) ** (n_qubits - flips)
    return float(total)


def _exact(value: float) -> Fraction:
    """Rational representation of a float rate (exact binary value)."""
    return Fraction(value)


def _tail_sums(
    n: int, below: bool, u: Fraction, v: Fraction, s: Fraction, d: Fraction
) -> tuple[Fraction, Fraction]:
    """Binomial generating-function sums used by the channel closed forms.

    Returns ``(sum C(n,a) u^a s^(n-a), sum C(n,a) v^a d^(n-a))`` with the
    flip count ``a`` ranging below (``a < ceil(n/2)``) or at/above the
    majority threshold.
    """
    threshold = math.ceil(n / 2)
    flips = range(0, threshold) if below else range(threshold, n + 1)
    plus = Fraction(0)
    minus = Fraction(0)
    for a in flips:
        c = math.comb(n, a)
        plus += c * u**a * s ** (n - a)
        minus += c * v**a * d ** (n - a)
    return plus, minus


def _channel_fractions(
    n_qubits: int, spec: PauliChannelSpec
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact (q_i, q_x, q_z, q_xz) with the all-ties-fail convention."""
    pi, px, py, pz = (_exact(spec.p_i), _exact(spec.p_x), _exact(spec.p_y), _exact(spec.p_z))
    flip = px + py  # probability a given qubit suffers a detectable bit flip
    keep = pi + pz
    flip_signed = px - py  # tracks the parity of Y among the flips
    keep_signed = pi - pz  # tracks the parity of Z among the non-flips
    lo_plus, lo_minus = _tail_sums(n_qubits, True, flip, flip_signed, keep, keep_signed)
    hi_plus, hi_minus = _tail_sums(n_qubits, False, flip, flip_signed, keep, keep_signed)
    # The signed sums isolate the parity of the residual phase (count of
    # Y among flipped qubits plus Z among unflipped ones).
    q_i = (lo_plus + lo_minus) / 2
    q_z = (lo_plus - lo_minus) / 2
    q_x = (hi_plus + hi_minus) / 2
    q_xz = (hi_plus - hi_minus) / 2
    return q_i, q_x, q_z, q_xz


def qec_effective_channel(n_qubits: int, spec: PauliChannelSpec) -> LogicalPauliChannel:
    """Logical channel for iid Pauli noise followed by majority-vote QEC.

    A pattern with ``a`` bit-flip-type errors (X or Y) loses the majority
    vote iff ``a >= ceil(n/2)``; the residual phase is the parity of Y
    (among flipped qubits) plus Z (among unflipped ones).  For even n the
    exact-half tie is counted entirely as failure.  That convention keeps
    the closed form simple and matches :func:`residual_x_rate`, but it is
    *not* realizable by any per-syndrome correction rule; see
    :func:`decoder_matched_channel` for the decoder-faithful variant.
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    q_i, q_x, q_z, q_xz = _channel_fractions(n_qubits, spec)
    return LogicalPauliChannel(float(q_i), float(q_x), float(q_z), float(q_xz))


def decoder_matched_channel(n_qubits: int, spec: PauliChannelSpec) -> LogicalPauliChannel:
    """Logical channel realized by an actual majority decoder.

    Every syndrome names two complementary candidate flip patterns; a
    decoder must pick one.  At an even-n exact-half tie the convention
    "assume qubit 0 did not flip" rescues exactly the candidate whose
    support avoids qubit 0, which under iid noise is exactly half of the
    tie mass (with the same residual-phase statistics in both halves).
    Equal to :func:`qec_effective_channel` for odd n.
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    q_i, q_x, q_z, q_xz = _channel_fractions(n_qubits, spec)
    if n_qubits % 2 == 0:
        pi, px, py, pz = (
            _exact(spec.p_i),
            _exact(spec.p_x),
            _exact(spec.p_y),
            _exact(spec.p_z),
        )
        half = n_qubits // 2
        c = math.comb(n_qubits, half)
        tie_total = c * (px + py) ** half * (pi + pz) ** half
        tie_signed = c * (px - py) ** half * (pi - pz) ** half
        tie_even = (tie_total + tie_signed) / 2
        tie_odd = (tie_total - tie_signed) / 2
        # Move the rescued half of the tie mass from failure to success,
        # preserving the residual-phase parity split.
        q_x -= tie_even / 2
        q_i += tie_even / 2
        q_xz -= tie_odd / 2
        q_z += tie_odd / 2
    return LogicalPauliChannel(float(q_i), float(q_x), float(q_z), float(q_xz))


def compose_channel(channel: LogicalPauliChannel, t: int) -> LogicalPauliChannel:
    """t-fold self-composition via the Bloch transfer eigenvalues.

    Pauli channels commute, so composition just raises the (x, y, z)
    transfer multipliers to the t-th power; the probabilities come back
    through the inverse discrete Fourier relations.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    ex, ey, ez = channel.transfer_eigenvalues()
    ext, eyt, ezt = ex**t, ey**t, ez**t
    q_i = (1.0 + ext + eyt + ezt) / 4.0
    q_x = (1.0 + ext - eyt - ezt) / 4.0
    q_z = (1.0 - ext - eyt + ezt) / 4.0
    q_xz = (1.0 - ext + eyt - ezt) / 4.0
    return LogicalPauliChannel(q_i, q_x, q_z, q_xz)
