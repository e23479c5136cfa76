"""Destructive swap-test statistics on the logical subspace.

One protocol shot consumes two identically prepared copies of the noisy
probe, runs the controlled-swap circuit, and records three +/-1 values:
the control-qubit readout ``x`` and the observable readouts ``a2``,
``a3`` on the two copies.  This module produces the exact eight-outcome
joint distribution from a logical density matrix, samples it, and turns
samples (or the distribution itself) into the moment estimates the
estimators consume.

Useful identities, all of which are covered by tests:

* ``E[x] = tr(rho^2)``
* ``E[a2] = E[a3] = tr(A rho)``
* ``E[x * a_i] = tr(A rho^2)``
* ``Cov(a2, a3) = 0`` (the copies are uncorrelated until x is read out)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .logical import LogicalObservable, LogicalState

__all__ = [
    "MomentEstimates",
    "OUTCOMES",
    "ShotRecord",
    "SwapDistribution",
    "estimate_moments",
    "exact_moments",
    "joint_distribution",
    "sample_shots",
]

#: Fixed outcome order (x, a2, a3) used by flattened probability vectors
#: and by the sampler; +1 sorts before -1.
OUTCOMES: tuple[tuple[int, int, int], ...] = tuple(
    (x, a2, a3) for x in (1, -1) for a2 in (1, -1) for a3 in (1, -1)
)

_NEGATIVE_TOL = -1e-12


@dataclass(frozen=True)
class SwapDistribution:
    """Joint distribution of one swap-test shot.

    ``probabilities`` maps each (x, a2, a3) outcome in :data:`OUTCOMES`
    order to its probability.
    """

    probabilities: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probabilities, dtype=float).reshape(-1)
        if probs.shape != (8,):
            raise ValueError(f"expected 8 outcome probabilities, got {probs.shape}")
        if probs.min() < _NEGATIVE_TOL:
            raise ValueError(f"negative outcome probability {probs.min():.3e}")
        if abs(probs.sum() - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {probs.sum()!r}")
        probs = probs.copy()
        probs.flags.writeable = False
        object.__setattr__(self, "probabilities", probs)

    def as_mapping(self) -> dict[tuple[int, int, int], float]:
        return dict(zip(OUTCOMES, self.probabilities.tolist()))


@dataclass(frozen=True)
class ShotRecord:
    """Raw +/-1 outcomes of ``nu`` protocol shots, plus the seed used."""

    shots: np.ndarray
    seed: tuple[int, ...]

    def __post_init__(self) -> None:
        shots = np.asarray(self.shots, dtype=np.int8)
        if shots.ndim != 2 or shots.shape[1] != 3:
            raise ValueError(f"expected shape (nu, 3), got {shots.shape}")
        if shots.shape[0] < 1:
            raise ValueError("at least one shot is required")
        if not np.isin(shots, (-1, 1)).all():
            raise ValueError("shot entries must be +1 or -1")
        shots = shots.copy()
        shots.flags.writeable = False
        object.__setattr__(self, "shots", shots)
        object.__setattr__(self, "seed", tuple(int(s) for s in self.seed))

    @property
    def nu(self) -> int:
        return int(self.shots.shape[0])


@dataclass(frozen=True)
class MomentEstimates:
    """First and mixed moments of the swap-test outcomes.

    ``a_mean`` averages the two per-copy readouts, ``x_mean`` is the
    control mean, ``xa_mean`` the mixed product mean.  ``nu`` is None
    for exact (infinite-shot) moments.
    """

    a_mean: float
    x_mean: float
    xa_mean: float
    nu: int | None

    def __post_init__(self) -> None:
        for name in ("a_mean", "x_mean", "xa_mean"):
            value = float(getattr(self, name))
            if not -1.0 - 1e-9 <= value <= 1.0 + 1e-9:
                raise ValueError(f"{name} must lie in [-1, 1], got {value}")
            object.__setattr__(self, name, value)
        if self.nu is not None and self.nu < 1:
            raise ValueError(f"nu must be >= 1, got {self.nu}")


def joint_distribution(state: LogicalState, observable: LogicalObservable) -> SwapDistribution:
    """Exact eight-outcome distribution for two copies of ``state``.

    The control outcome inserts a copy swap into one of the two trace
    terms, so for each (a2, a3) pair the probability splits as
    ``(tr(P2 rho) tr(P3 rho) + x * tr(P2 rho P3 rho)) / 2`` with P the
    +/- eigenprojectors of the observable.  The observable must be
    binary (+/-1 eigenvalues), i.e. square to the identity.
    """
    if not np.allclose(
        observable.matrix @ observable.matrix, np.eye(2), atol=1e-10
    ):
        raise ValueError("swap-test observable must have +/-1 eigenvalues")
    rho = state.matrix
    eye = np.eye(2, dtype=complex)
    proj = {1: (eye + observable.matrix) / 2.0, -1: (eye - observable.matrix) / 2.0}
    probs = []
    for x, a2, a3 in OUTCOMES:
        product_term = np.trace(proj[a2] @ rho).real * np.trace(proj[a3] @ rho).real
        swap_term = np.trace(proj[a2] @ rho @ proj[a3] @ rho).real
        probs.append(0.5 * (product_term + x * swap_term))
    return SwapDistribution(np.array(probs))


def sample_shots(
    distribution: SwapDistribution, nu: int, seed: int | tuple[int, ...]
) -> ShotRecord:
    """Draw ``nu`` iid shots with a counter-based generator.

    ``seed`` may be a bare integer or a (root, *spawn) tuple; the same
    value always reproduces the same record.
    """
    if nu < 1:
        raise ValueError(f"nu must be >= 1, got {nu}")
    seed_tuple = (seed,) if isinstance(seed, int) else tuple(seed)
    root, *spawn = seed_tuple
    sequence = np.random.SeedSequence(entropy=root, spawn_key=tuple(spawn))
    rng = np.random.Generator(np.random.Philox(sequence))
    probs = np.clip(distribution.probabilities, 0.0, None)
    probs = probs / probs.sum()
    draws = rng.choice(8, size=nu, p=probs)
    table = np.array(OUTCOMES, dtype=np.int8)
    return ShotRecord(table[draws], seed_tuple)


def estimate_moments(record: ShotRecord) -> MomentEstimates:
    """Sample moments of a shot record (both copies pooled for a)."""
    x = record.shots[:, 0].astype(float)
    a2 = record.shots[:, 1].astype(float)
    a3 = record.shots[:, 2].astype(float)
    return MomentEstimates(
        a_mean=float(np.mean((a2 + a3) / 2.0)),
        x_mean=float(np.mean(x)),
        xa_mean=float(np.mean(x * (a2 + a3) / 2.0)),
        nu=record.nu,
    )


def exact_moments(distribution: SwapDistribution) -> MomentEstimates:
    """Infinite-shot limit of :func:`estimate_moments`."""
    outcomes = np.array(OUTCOMES, dtype=float)
    probs = distribution.probabilities
    x = outcomes[:, 0]
    a_avg = (outcomes[:, 1] + outcomes[:, 2]) / 2.0
    return MomentEstimates(
        a_mean=float(np.dot(probs, a_avg)),
        x_mean=float(np.dot(probs, x)),
        xa_mean=float(np.dot(probs, x * a_avg)),
        nu=None,
    )
