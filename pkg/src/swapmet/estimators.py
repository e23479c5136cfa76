"""Point estimators for the accumulated phase and their error bounds.

All three single-parameter estimators share the template
``asin(signal) / (2 n t)``; they differ in how the signal is cleaned up
before the arcsine:

* naive: the raw observable mean -- systematically shrunk by dephasing;
* vsp (virtual state purification): divides the mixed moment
  ``E[x a]`` by the purity ``E[x]``, removing noise to first order;
* swap: divides the observable mean by the coherence factor
  ``sqrt(2 E[x] - 1)`` inferred from the purity, which removes logical
  dephasing exactly.

Estimates are reported with explicit ``clamped`` (arcsine argument fell
outside [-1, 1]) and ``failed`` (denominator collapsed, no estimate)
flags rather than silent NaNs.

The variance/bias bounds at the bottom are the closed-form guarantees
used by the scaling experiments; they take plain rate inputs through
:class:`BoundInputs` so tests can pin them without touching any
simulation code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import accumulate_rate, p_odd, residual_x_rate
from .swaptest import MomentEstimates

__all__ = [
    "BoundInputs",
    "EstimateReport",
    "METHOD_NAIVE",
    "METHOD_SWAP",
    "METHOD_SWAP_ALPHA",
    "METHOD_VSP",
    "alpha_overlap",
    "bias_bound_iidp",
    "lambda_naive",
    "lambda_swap",
    "lambda_vsp",
    "p_odd_from_x",
    "p_odd_from_x_alpha",
    "rebranch",
    "variance_bound_dephasing",
    "variance_bound_iidp",
]

METHOD_NAIVE = "naive"
METHOD_VSP = "vsp"
METHOD_SWAP = "swap"
METHOD_SWAP_ALPHA = "swap-alpha"

#: Denominators at or below this are treated as estimator failure.
DENOMINATOR_FLOOR = 1e-12


@dataclass(frozen=True)
class EstimateReport:
    """Outcome of one estimator evaluation.

    ``variance_bound`` / ``bias_bound`` stay None unless a runner
    attaches the matching closed-form guarantee.
    """

    method: str
    estimate: float | None
    clamped: bool
    failed: bool
    nu: int | None
    variance_bound: float | None = None
    bias_bound: float | None = None

    def __post_init__(self) -> None:
        if self.failed and self.estimate is not None:
            raise ValueError("failed reports carry no estimate")
        if not self.failed and self.estimate is None:
            raise ValueError("non-failed reports must carry an estimate")

    def with_bounds(
        self, variance_bound: float | None, bias_bound: float | None
    ) -> "EstimateReport":
        return EstimateReport(
            self.method,
            self.estimate,
            self.clamped,
            self.failed,
            self.nu,
            variance_bound,
            bias_bound,
        )


def _check_nt(n_qubits: int, t: int) -> None:
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")


def _principal(method: str, arg: float, n_qubits: int, t: int, nu: int | None) -> EstimateReport:
    clamped = False
    if arg > 1.0:
        arg, clamped = 1.0, True
    elif arg < -1.0:
        arg, clamped = -1.0, True
    estimate = math.asin(arg) / (2.0 * n_qubits * t)
    return EstimateReport(method, estimate, clamped, False, nu)


def lambda_naive(moments: MomentEstimates, n_qubits: int, t: int) -> EstimateReport:
    """Uncorrected estimator ``asin(a_mean) / (2 n t)``."""
    _check_nt(n_qubits, t)
    return _principal(METHOD_NAIVE, moments.a_mean, n_qubits, t, moments.nu)


def lambda_swap(moments: MomentEstimates, n_qubits: int, t: int) -> EstimateReport:
    """Purity-corrected estimator ``asin(a_mean / sqrt(2 x_mean - 1)) / (2 n t)``.

    Fails when the inferred squared coherence ``2 x_mean - 1`` is not
    positive (the probe has fully dephased, or sampling noise pushed the
    purity below 1/2).
    """
    _check_nt(n_qubits, t)
    coherence_sq = 2.0 * moments.x_mean - 1.0
    if coherence_sq <= DENOMINATOR_FLOOR:
        return EstimateReport(METHOD_SWAP, None, False, True, moments.nu)
    return _principal(
        METHOD_SWAP, moments.a_mean / math.sqrt(coherence_sq), n_qubits, t, moments.nu
    )


def lambda_vsp(moments: MomentEstimates, n_qubits: int, t: int) -> EstimateReport:
    """Second-moment estimator ``asin(xa_mean / x_mean) / (2 n t)``.

    The ratio tr(A rho^2)/tr(rho^2) suppresses dephasing only to first
    order in the noise rate, which is exactly the residual the swap
    estimator removes; kept as the reference point for comparisons.
    """
    _check_nt(n_qubits, t)
    if moments.x_mean <= DENOMINATOR_FLOOR:
        return EstimateReport(METHOD_VSP, None, False, True, moments.nu)
    return _principal(
        METHOD_VSP, moments.xa_mean / moments.x_mean, n_qubits, t, moments.nu
    )


def p_odd_from_x(x_mean: float) -> float:
    """Invert ``x = 1 - 2p + 2p^2`` for the dephasing weight p in [0, 1/2].

    Raises when ``x_mean`` is below the p = 1/2 floor of that parabola
    (no real inversion exists).
    """
    radicand = 2.0 * x_mean - 1.0
    if radicand < 0.0:
        raise ValueError(f"purity {x_mean} is below the dephasing floor 1/2")
    return 0.5 * (1.0 - math.sqrt(radicand))


def alpha_overlap(n_qubits: int, lambda1: float, lambda2: float, t: float) -> float:
    """Branch-overlap parameter of the two-parameter evolved probe.

    Quantifies how far the dephasing flip direction tilts away from
    orthogonal to the evolved state:
    ``alpha = 4 n^2 lambda1^2 lambda2^2 sin(Omega t)^4 / Omega^4`` with
    ``Omega = sqrt(lambda1^2 + n^2 lambda2^2)``.  Zero iff either
    coupling vanishes; always in [0, 1].
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    omega_sq = lambda1**2 + (n_qubits * lambda2) ** 2
    if omega_sq == 0.0:
        return 0.0
    value = (
        4.0
        * (n_qubits * lambda1 * lambda2) ** 2
        * math.sin(math.sqrt(omega_sq) * t) ** 4
        / omega_sq**2
    )
    # 4 a^2 b^2 <= (a^2 + b^2)^2 guarantees <= 1 up to rounding.
    return min(value, 1.0)


def p_odd_from_x_alpha(x_mean: float, alpha: float) -> float:
    """Invert the purity law when the flipped branch overlaps the probe.

    Solves ``x = 1 - 2p(1-alpha) + 2p^2(1-alpha)`` for the smaller root;
    reduces to :func:`p_odd_from_x` at alpha = 0.  Raises outside the
    invertible domain (alpha at 1, or purity below the parabola vertex).
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    shrink = 1.0 - alpha
    radicand = shrink * (2.0 * x_mean - 1.0 - alpha)
    if radicand < 0.0:
        raise ValueError(
            f"purity {x_mean} is below the invertible floor for alpha={alpha}"
        )
    return (shrink - math.sqrt(radicand)) / (2.0 * shrink)


def rebranch(
    report: EstimateReport, n_qubits: int, t: int, reference: float
) -> EstimateReport:
    """Resolve the arcsine branch ambiguity against a reference value.

    ``asin`` confines ``2 n t lambda_hat`` to [-pi/2, pi/2]; in sweeps
    whose total phase exceeds that, the physically right branch is the
    one nearest the (locally known) true phase ``2 n t reference``.
    Candidates ``phi + 2 pi k`` and ``pi - phi + 2 pi k`` are compared
    and the closest wins.  Failed reports pass through untouched.
    """
    _check_nt(n_qubits, t)
    if report.failed or report.estimate is None:
        return report
    scale = 2.0 * n_qubits * t
    phase = scale * report.estimate
    target = scale * reference
    best = None
    for base in (phase, math.pi - phase):
        k = round((target - base) / (2.0 * math.pi))
        for shift in (k - 1, k, k + 1):
            candidate = base + 2.0 * math.pi * shift
            distance = abs(candidate - target)
            if best is None or distance < best[0] - 1e-15:
                best = (distance, candidate)
    assert best is not None
    return EstimateReport(
        report.method, best[1] / scale, report.clamped, report.failed, report.nu
    )


@dataclass(frozen=True)
class BoundInputs:
    """Rate inputs shared by the closed-form variance/bias bounds.

    ``p_odd`` is the accumulated odd-parity dephasing weight,
    ``flip_free`` the probability that no QEC round ever lost the
    majority vote (1 under pure dephasing), ``eta`` the Fisher-geometry
    factor ``cos(2 n t lam)^2``.
    """

    n_qubits: int
    t: int
    lam: float
    nu: int
    p_odd: float
    flip_free: float
    eta: float

    def __post_init__(self) -> None:
        _check_nt(self.n_qubits, self.t)
        if self.lam <= 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if self.nu < 1:
            raise ValueError(f"nu must be >= 1, got {self.nu}")
        if not 0.0 <= self.p_odd <= 0.5:
            raise ValueError(f"p_odd must lie in [0, 1/2], got {self.p_odd}")
        if not 0.0 <= self.flip_free <= 1.0:
            raise ValueError(f"flip_free must lie in [0, 1], got {self.flip_free}")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")

    @classmethod
    def from_dephasing(
        cls, n_qubits: int, t: int, lam: float, nu: int, p_z1: float
    ) -> "BoundInputs":
        """Accumulate a per-round dephasing rate into bound inputs."""
        return cls(
            n_qubits=n_qubits,
            t=t,
            lam=lam,
            nu=nu,
            p_odd=p_odd(n_qubits, accumulate_rate(p_z1, t)),
            flip_free=1.0,
            eta=math.cos(2.0 * n_qubits * t * lam) ** 2,
        )

    @classmethod
    def from_iidp(
        cls, n_qubits: int, t: int, lam: float, nu: int, p_x1: float, p_z1: float
    ) -> "BoundInputs":
        """Bound inputs for independent per-round bit and phase flips."""
        per_round_loss = residual_x_rate(n_qubits, p_x1)
        return cls(
            n_qubits=n_qubits,
            t=t,
            lam=lam,
            nu=nu,
            p_odd=p_odd(n_qubits, accumulate_rate(p_z1, t)),
            flip_free=(1.0 - per_round_loss) ** t,
            eta=math.cos(2.0 * n_qubits * t * lam) ** 2,
        )


def _nt_sq(b: BoundInputs) -> float:
    return b.nu * (b.n_qubits * b.t) ** 2


def variance_bound_dephasing(b: BoundInputs) -> float:
    """Upper bound on Var(lambda_swap) under pure logical dephasing.

    Two shot-noise contributions: the observable readout (second power
    of the coherence) and the purity readout propagated through the
    coherence inversion (fourth power).  Raises at the divergence points
    eta = 0 (arcsine slope collapse) and p_odd = 1/2.
    """
    coherence_sq = (1.0 - 2.0 * b.p_odd) ** 2
    if b.eta <= 0.0:
        raise ValueError("bound diverges at eta = 0 (2 n t lam at pi/2)")
    if coherence_sq <= 0.0:
        raise ValueError("bound diverges as p_odd reaches 1/2")
    denom = _nt_sq(b)
    return 3.0 / (8.0 * denom * coherence_sq * b.eta) + 3.0 / (
        16.0 * denom * coherence_sq**2 * b.eta
    )


def variance_bound_iidp(b: BoundInputs) -> float | None:
    """Variance bound with residual bit-flip failures folded in.

    Replaces the squared coherence by its flip-aware worst case
    ``L = p''^2 (1-2 p_odd)^2 - (1 - p''^2)`` and the slope factor by
    ``D = L - a_up^2`` with ``a_up`` the worst-case signal magnitude.
    Reduces exactly to :func:`variance_bound_dephasing` when the
    flip-free probability ``p''`` is 1.  Returns None where the
    worst-casing is vacuous (D or L nonpositive, or the signal sign is
    no longer guaranteed): no finite guarantee exists there.
    """
    p_fail = 1.0 - b.flip_free
    coherence = (1.0 - 2.0 * b.p_odd) * b.flip_free
    signal = abs(math.sin(2.0 * b.n_qubits * b.t * b.lam))
    if coherence * signal - p_fail < 0.0:
        return None
    worst_coherence_sq = coherence**2 - (1.0 - b.flip_free**2)
    if worst_coherence_sq <= 0.0:
        return None
    signal_up = coherence * signal + p_fail
    slope_sq = worst_coherence_sq - signal_up**2
    if slope_sq <= 0.0:
        return None
    denom = _nt_sq(b)
    return 3.0 / (8.0 * denom * slope_sq) + 3.0 / (
        16.0 * denom * worst_coherence_sq * slope_sq
    )


def bias_bound_iidp(b: BoundInputs) -> float:
    """Worst-case bias of lambda_swap caused by residual bit flips.

    Pure dephasing (flip_free = 1) gives exactly zero: the swap
    correction is unbiased there.
    """
    if b.eta <= 0.0:
        raise ValueError("bound diverges at eta = 0 (2 n t lam at pi/2)")
    coherence = 1.0 - 2.0 * b.p_odd
    if coherence <= 0.0:
        raise ValueError("bound diverges as p_odd reaches 1/2")
    p_fail = 1.0 - b.flip_free
    signal = math.sin(2.0 * b.n_qubits * b.t * b.lam)
    lead = p_fail / (b.n_qubits * b.t * coherence * math.sqrt(b.eta))
    return lead * (1.0 + (1.0 + b.flip_free) * signal / coherence)
