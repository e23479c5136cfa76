"""Two-parameter maximum-likelihood estimation from swap-test counts.

The data are, for each evolution time t_j, three binomial counts: the
observable readouts pooled over both copies of the probe, the control
readouts, and their products.  Each estimation method turns the running
parameters into a predicted "+1" probability for its readout channel;
measured purities enter as plug-in factors, so the control-channel term
of the likelihood is constant in the parameters (it is still summed, to
keep the reported likelihood honest).

Method models, with ``a(lam; t)`` the noiseless observable expectation
and ``X_j`` the measured purity at t_j:

* naive:       observable counts, q = (1 + a) / 2
* vsp:         product counts,    q = (1 + a * X_j) / 2
* swap:        observable counts, q = (1 + c_j * a) / 2 with the
               measured coherence c_j = sqrt(max(2 X_j - 1, 0))
* swap-alpha:  like swap, but the coherence inversion accounts for the
               branch overlap alpha(lam; t_j) of the evolved probe,
               which depends on the running parameters:
               c_j = sqrt((2 X_j - 1 - alpha) / (1 - alpha))

Fits use the Nelder-Mead simplex, initialized uniformly at random
inside a relative box around a starting point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .channels import (
    PauliChannelSpec,
    accumulate_rate,
    decoder_matched_channel,
    dephase_logical,
    p_odd,
)
from .estimators import (
    METHOD_NAIVE,
    METHOD_SWAP,
    METHOD_SWAP_ALPHA,
    METHOD_VSP,
    alpha_overlap,
)
from .logical import (
    HamiltonianKind,
    HamiltonianSpec,
    ObservableKind,
    evolve,
    expectation,
    ghz_probe,
    purity,
    restrict_observable,
)
from .swaptest import MomentEstimates, ShotRecord

__all__ = [
    "MLE_METHODS",
    "MleConfig",
    "MleResult",
    "NoisePlacement",
    "OutcomeData",
    "TimePointCounts",
    "mle_fit",
    "model_expectations",
    "negative_log_likelihood",
    "noisy_probe_state",
]

_PROB_CLIP = 1e-12

MLE_METHODS = (METHOD_NAIVE, METHOD_VSP, METHOD_SWAP, METHOD_SWAP_ALPHA)


class NoisePlacement(str, enum.Enum):
    """Where noise acts relative to the evolution.

    END_OF_EVOLUTION dephases once with the full accumulated rate (only
    meaningful for pure phase noise); PER_TIME_UNIT interleaves the
    QEC-filtered logical channel after every unit step.
    """

    END_OF_EVOLUTION = "end"
    PER_TIME_UNIT = "per-unit"


def _two_param_spec(lambda1: float, lambda2: float, n_qubits: int) -> HamiltonianSpec:
    return HamiltonianSpec(HamiltonianKind.TWO_PARAM_XZ, n_qubits, (lambda1, lambda2))


def noisy_probe_state(
    lambda1: float,
    lambda2: float,
    n_qubits: int,
    t: int,
    noise: PauliChannelSpec,
    placement: NoisePlacement,
):
    """Logical state of the probe after noisy evolution to time t.

    END_OF_EVOLUTION evolves coherently and dephases once with the
    accumulated odd-parity weight (pure phase noise only);
    PER_TIME_UNIT alternates unit evolution with the QEC-filtered
    logical channel.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    placement = NoisePlacement(placement)
    spec = _two_param_spec(lambda1, lambda2, n_qubits)
    if placement is NoisePlacement.END_OF_EVOLUTION:
        if noise.p_x != 0.0 or noise.p_y != 0.0:
            raise ValueError(
                "end-of-evolution placement models pure dephasing only; "
                "use per-time-unit placement for bit-flip noise"
            )
        state = evolve(ghz_probe(), spec, t)
        return dephase_logical(state, p_odd(n_qubits, accumulate_rate(noise.p_z, t)))
    # The decoder-matched channel reproduces what the simulated QEC
    # round actually does with even-n syndrome ties; it coincides with
    # the pessimistic closed form at odd n.
    channel = decoder_matched_channel(n_qubits, noise)
    state = ghz_probe()
    for _ in range(t):
        state = channel.apply(evolve(state, spec, 1))
    return state


def model_expectations(
    lambda1: float,
    lambda2: float,
    n_qubits: int,
    t: int,
    noise: PauliChannelSpec,
    placement: NoisePlacement,
) -> tuple[float, float, float]:
    """Exact noisy expectations ``(<Y^(x)n>, <x>, alpha)`` at time t.

    The probe is the equal-branch superposition, evolved under the
    two-parameter generator; noise is applied per ``placement``.  The
    returned overlap alpha is a property of the noiseless evolved state
    (it parameterizes how dephasing shows up in the purity).
    """
    state = noisy_probe_state(lambda1, lambda2, n_qubits, t, noise, placement)
    observable = restrict_observable(ObservableKind.Y_TO_N, n_qubits)
    alpha = alpha_overlap(n_qubits, lambda1, lambda2, t)
    return expectation(state, observable), purity(state), alpha


@dataclass(frozen=True)
class TimePointCounts:
    """Binomial readout counts at one evolution time.

    Counts are floats so that exact (infinite-shot) data can enter the
    same likelihood as weighted frequencies.
    """

    t: int
    a_plus: float
    a_trials: float
    x_plus: float
    x_trials: float
    xa_plus: float
    xa_trials: float

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        for prefix in ("a", "x", "xa"):
            k = float(getattr(self, f"{prefix}_plus"))
            trials = float(getattr(self, f"{prefix}_trials"))
            if trials <= 0.0:
                raise ValueError(f"{prefix}_trials must be positive")
            if not 0.0 <= k <= trials:
                raise ValueError(f"{prefix}_plus must lie in [0, {prefix}_trials]")
            object.__setattr__(self, f"{prefix}_plus", k)
            object.__setattr__(self, f"{prefix}_trials", trials)

    @property
    def x_mean(self) -> float:
        """Measured purity (+/-1 mean of the control readout)."""
        return 2.0 * self.x_plus / self.x_trials - 1.0

    @classmethod
    def from_shot_record(cls, t: int, record: ShotRecord) -> "TimePointCounts":
        shots = record.shots
        x = shots[:, 0]
        copies = shots[:, 1:3]
        products = copies * x[:, None]
        return cls(
            t=t,
            a_plus=float((copies == 1).sum()),
            a_trials=float(2 * record.nu),
            x_plus=float((x == 1).sum()),
            x_trials=float(record.nu),
            xa_plus=float((products == 1).sum()),
            xa_trials=float(2 * record.nu),
        )

    @classmethod
    def from_exact_moments(
        cls, t: int, moments: MomentEstimates, weight: float = 1.0
    ) -> "TimePointCounts":
        """Infinite-shot limit: frequencies as fractional counts.

        ``weight`` scales all trial counts (the likelihood's argmax is
        invariant to it); the per-copy channels carry twice the control
        channel's trials, as in the finite-shot case.
        """
        if weight <= 0.0:
            raise ValueError("weight must be positive")
        return cls(
            t=t,
            a_plus=weight * (1.0 + moments.a_mean),
            a_trials=2.0 * weight,
            x_plus=weight * (1.0 + moments.x_mean) / 2.0,
            x_trials=weight,
            xa_plus=weight * (1.0 + moments.xa_mean),
            xa_trials=2.0 * weight,
        )


@dataclass(frozen=True)
class OutcomeData:
    """Counts at one or more evolution times for a fixed probe."""

    n_qubits: int
    points: tuple[TimePointCounts, ...]

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        points = tuple(self.points)
        if len({p.t for p in points}) != len(points):
            raise ValueError("duplicate evolution times in data")
        object.__setattr__(self, "points", points)


def _binomial_nll(k: float, trials: float, q: float) -> float:
    """Binomial NLL shifted so its minimum over ``q`` is exactly zero.

    Equals the plain NLL minus its value at ``q = k / trials``.  The
    shift is constant in the parameters, so the argmin is untouched,
    but values near the optimum stay O(1) instead of O(trials), which
    keeps float resolution fine enough to locate stiff, strongly
    correlated optima.
    """
    q = min(max(q, _PROB_CLIP), 1.0 - _PROB_CLIP)
    frequency = k / trials
    nll = 0.0
    if k > 0.0:
        nll += k * math.log1p((frequency - q) / q)
    if k < trials:
        nll += (trials - k) * math.log1p((q - frequency) / (1.0 - q))
    return nll


def negative_log_likelihood(
    params: tuple[float, float], data: OutcomeData, method: str
) -> float:
    """Binomial NLL of ``data`` under the named method model.

    Reported up to an additive constant fixed by the data: every term
    is shifted to vanish at the empirical frequency, so the value at
    the optimum is near zero rather than O(total trials).
    """
    if method not in MLE_METHODS:
        raise ValueError(f"unknown method {method!r}")
    lambda1, lambda2 = float(params[0]), float(params[1])
    spec = _two_param_spec(lambda1, lambda2, data.n_qubits)
    observable = restrict_observable(ObservableKind.Y_TO_N, data.n_qubits)
    probe = ghz_probe()
    total = 0.0
    for point in data.points:
        a_ideal = expectation(evolve(probe, spec, point.t), observable)
        x_meas = point.x_mean
        if method == METHOD_NAIVE:
            predicted = a_ideal
        elif method == METHOD_VSP:
            predicted = a_ideal * x_meas
        elif method == METHOD_SWAP:
            predicted = a_ideal * math.sqrt(max(2.0 * x_meas - 1.0, 0.0))
        else:  # swap-alpha
            alpha = alpha_overlap(data.n_qubits, lambda1, lambda2, point.t)
            shrink = 1.0 - alpha
            if shrink <= _PROB_CLIP:
                coherence = 0.0
            else:
                coherence = math.sqrt(max((2.0 * x_meas - 1.0 - alpha) / shrink, 0.0))
            predicted = a_ideal * coherence
        if method == METHOD_VSP:
            total += _binomial_nll(point.xa_plus, point.xa_trials, (1.0 + predicted) / 2.0)
        else:
            total += _binomial_nll(point.a_plus, point.a_trials, (1.0 + predicted) / 2.0)
        # Purity-aware methods consume the control channel through the
        # plug-in x_mean inside their predictions; its own likelihood
        # term sits exactly at its minimum and contributes zero.
    return total


@dataclass(frozen=True)
class MleConfig:
    """Optimizer settings for :func:`mle_fit`."""

    init_halfwidth: float = 0.10
    tol: float = 1e-10
    max_iter: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.init_halfwidth < 1.0:
            raise ValueError("init_halfwidth must lie in [0, 1)")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass(frozen=True)
class MleResult:
    """Fit outcome, including the monotone best-NLL trace."""

    method: str
    params: tuple[float, float]
    nll: float
    iterations: int
    converged: bool
    init: tuple[float, float]
    nll_trace: tuple[float, ...]


def mle_fit(
    data: OutcomeData,
    method: str,
    start: tuple[float, float],
    config: MleConfig = MleConfig(),
) -> MleResult:
    """Simplex fit of (lambda1, lambda2), seeded-random initialization.

    The starting simplex is drawn uniformly inside the box
    ``start_i * (1 +/- init_halfwidth)``; optimization stops when the
    simplex collapses below ``tol`` in both parameter and value spread.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(config.seed)))
    start_arr = np.asarray(start, dtype=float)
    jitter = rng.uniform(-config.init_halfwidth, config.init_halfwidth, size=2)
    init = start_arr + jitter * np.abs(start_arr)

    def objective(params: np.ndarray) -> float:
        return negative_log_likelihood((params[0], params[1]), data, method)

    trace: list[float] = []

    def record(best: np.ndarray) -> None:
        # Nelder-Mead reports the current best vertex, whose value never
        # worsens; tests assert this trace is monotone non-increasing.
        trace.append(objective(best))

    result = optimize.minimize(
        objective,
        init,
        method="Nelder-Mead",
        callback=record,
        options={
            "xatol": config.tol,
            "fatol": config.tol,
            "maxiter": config.max_iter,
            "maxfev": 4 * config.max_iter,
        },
    )
    return MleResult(
        method=method,
        params=(float(result.x[0]), float(result.x[1])),
        nll=float(result.fun),
        iterations=int(result.nit),
        converged=bool(result.success),
        init=(float(init[0]), float(init[1])),
        nll_trace=tuple(trace),
    )
