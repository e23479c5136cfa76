"""Dense few-qubit reference simulator.

This module is the package's independent oracle: it carries full
``2^n``-dimensional density matrices, applies noise site by site,
performs a real syndrome-decoding QEC round, and executes the swap test
as an explicit circuit on ``1 + 2n`` qubits.  Nothing here is optimized
beyond what n <= 4 needs; the point is that the code paths share no
algebra with the logical-subspace implementations they are used to
cross-check.

Qubit index 0 is the leftmost tensor factor (most significant bit of a
computational basis index).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channels import LogicalPauliChannel, PauliChannelSpec
from .logical import (
    HamiltonianKind,
    HamiltonianSpec,
    LogicalState,
    ObservableKind,
)

__all__ = [
    "DenseState",
    "MAX_ORACLE_QUBITS",
    "apply_site_channel",
    "dense_observable",
    "enumerate_effective_channel",
    "full_evolve",
    "full_hamiltonian",
    "ghz_dense",
    "qec_round_full",
    "reduce_to_logical",
    "swap_test_full",
]

#: Dense simulation is kept to small registers on purpose; the swap test
#: below instantiates operators on 2n+1 qubits.
MAX_ORACLE_QUBITS = 6

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


@dataclass(frozen=True)
class DenseState:
    """Full density matrix of an n-qubit register."""

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_ORACLE_QUBITS:
            raise ValueError(
                f"dense oracle supports 1..{MAX_ORACLE_QUBITS} qubits, got {self.n_qubits}"
            )
        dim = 2**self.n_qubits
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {mat.shape}")
        if not np.allclose(mat, mat.conj().T, atol=1e-10):
            raise ValueError("density matrix must be Hermitian")
        trace = mat.trace().real
        if abs(trace - 1.0) > 1e-9:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)


def ghz_dense(n_qubits: int) -> DenseState:
    """(|0..0> + |1..1>)/sqrt(2) as a dense density matrix."""
    dim = 2**n_qubits
    vec = np.zeros(dim, dtype=complex)
    vec[0] = vec[-1] = 1.0 / math.sqrt(2.0)
    return DenseState(n_qubits, np.outer(vec, vec.conj()))


def _site_operator(op: np.ndarray, site: int, n_qubits: int) -> np.ndarray:
    factors = [np.eye(2, dtype=complex)] * n_qubits
    factors[site] = op
    out = factors[0]
    for factor in factors[1:]:
        out = np.kron(out, factor)
    return out


def full_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    """Physical generator on the full register."""
    n = spec.n_qubits
    dim = 2**n
    z_sum = np.zeros((dim, dim), dtype=complex)
    for site in range(n):
        z_sum += _site_operator(_PAULI["Z"], site, n)
    if spec.kind is HamiltonianKind.SINGLE_PARAM_Z:
        (lam,) = spec.couplings
        return lam * z_sum
    lam1, lam2 = spec.couplings
    x_all = _PAULI["X"]
    for _ in range(n - 1):
        x_all = np.kron(x_all, _PAULI["X"])
    return lam1 * x_all + lam2 * z_sum


def full_evolve(state: DenseState, spec: HamiltonianSpec, t: float) -> DenseState:
    if spec.n_qubits != state.n_qubits:
        raise ValueError("Hamiltonian and state disagree on qubit count")
    ham = full_hamiltonian(spec)
    energies, modes = np.linalg.eigh(ham)
    unitary = (modes * np.exp(-1j * t * energies)) @ modes.conj().T
    return DenseState(state.n_qubits, unitary @ state.matrix @ unitary.conj().T)


def apply_site_channel(state: DenseState, site: int, spec: PauliChannelSpec) -> DenseState:
    """Apply a single-qubit Pauli channel to one site."""
    if not 0 <= site < state.n_qubits:
        raise ValueError(f"site {site} out of range for {state.n_qubits} qubits")
    out = np.zeros_like(state.matrix)
    for label, weight in (("I", spec.p_i), ("X", spec.p_x), ("Y", spec.p_y), ("Z", spec.p_z)):
        if weight == 0.0:
            continue
        op = _site_operator(_PAULI[label], site, state.n_qubits)
        out += weight * (op @ state.matrix @ op.conj().T)
    return DenseState(state.n_qubits, out)


def _tie_break_pattern(candidate: int, complement: int, n_qubits: int) -> int:
    """Choose between the two complementary flip patterns of a syndrome.

    Majority vote: the lighter pattern wins; at an exact tie assume the
    first qubit (site 0, most significant bit) did not flip, i.e. pick
    the candidate whose support avoids site 0.
    """
    w_c = candidate.bit_count()
    w_k = complement.bit_count()
    if w_c != w_k:
        return candidate if w_c < w_k else complement
    top_bit = 1 << (n_qubits - 1)
    return candidate if not candidate & top_bit else complement


def qec_round_full(state: DenseState) -> DenseState:
    """One full error-correction round: syndrome projection + correction.

    The repetition-code stabilizers Z_i Z_{i+1} are diagonal, so each
    syndrome sector is spanned by a complementary pair of computational
    basis strings {b, ~b}.  Measuring the syndrome kills coherences
    between sectors; the correction applies the bit flips of the
    majority-vote pattern for that sector (ties per
    :func:`_tie_break_pattern`), mapping the pair onto {|0..0>, |1..1>}.
    """
    n = state.n_qubits
    dim = 2**n
    mask = dim - 1
    # destination[b] = b xor correction(syndrome(b)); syndrome(b) is
    # labeled by min(b, ~b), and the flip pattern needed to reach the
    # all-zero branch from b is b itself (or ~b for the other branch).
    destination = np.empty(dim, dtype=np.int64)
    for b in range(dim // 2):
        comp = b ^ mask
        pattern = _tie_break_pattern(b, comp, n)
        destination[b] = b ^ pattern
        destination[comp] = comp ^ pattern
    out = np.zeros_like(state.matrix)
    for b in range(dim):
        comp = b ^ mask
        # Same-sector coherences survive the projection: partner index
        # pairs are (b, b) and (b, comp).
        out[destination[b], destination[b]] += state.matrix[b, b]
        out[destination[b], destination[comp]] += state.matrix[b, comp]
    return DenseState(n, out)


def dense_observable(kind: ObservableKind, n_qubits: int) -> np.ndarray:
    """Full-register matrix of the named readout observable."""
    kind = ObservableKind(kind)
    if kind is ObservableKind.Y_TO_N:
        out = _PAULI["Y"]
        for _ in range(n_qubits - 1):
            out = np.kron(out, _PAULI["Y"])
        return out
    # 2|g><g| - I for g = (|0..0> + i|1..1>)/sqrt(2).
    dim = 2**n_qubits
    g = np.zeros(dim, dtype=complex)
    g[0] = 1.0 / math.sqrt(2.0)
    g[-1] = 1.0j / math.sqrt(2.0)
    return 2.0 * np.outer(g, g.conj()) - np.eye(dim, dtype=complex)


def reduce_to_logical(state: DenseState) -> tuple[LogicalState, float]:
    """Project onto span{|0..0>, |1..1>} and report the leaked weight.

    Returns the renormalized 2x2 block and ``1 - tr(P rho P)``.  Raises
    if effectively all weight has leaked (nothing to renormalize).
    """
    dim = 2**state.n_qubits
    block = np.array(
        [
            [state.matrix[0, 0], state.matrix[0, dim - 1]],
            [state.matrix[dim - 1, 0], state.matrix[dim - 1, dim - 1]],
        ],
        dtype=complex,
    )
    weight = block.trace().real
    if weight < 1e-12:
        raise ValueError("state has no support on the codespace")
    return LogicalState(block / weight), float(1.0 - weight)


def _projector_pair(op: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(P_plus, P_minus) spectral projectors of a +/-1-valued observable."""
    dim = op.shape[0]
    eye = np.eye(dim, dtype=complex)
    return (eye + op) / 2.0, (eye - op) / 2.0


def swap_test_full(state: DenseState, observable: np.ndarray) -> dict[tuple[int, int, int], float]:
    """Explicit destructive swap test on two copies of ``state``.

    Builds the (1 + 2n)-qubit circuit H(0) -> controlled-SWAP -> H(0),
    then measures X on the control and ``observable`` on each copy.
    Returns the eight joint outcome probabilities keyed by
    ``(x, a2, a3)`` with entries +1/-1.

    The control X-measurement is implemented as a Z-measurement after
    the final Hadamard, which is the same thing and keeps the projectors
    diagonal.
    """
    n = state.n_qubits
    if observable.shape != (2**n, 2**n):
        raise ValueError("observable dimension does not match the state")
    dim_copy = 2**n
    dim_full = 2 * dim_copy * dim_copy

    rho_full = np.kron(
        np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex),
        np.kron(state.matrix, state.matrix),
    )

    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)
    h0 = np.kron(hadamard, np.eye(dim_copy * dim_copy, dtype=complex))

    swap = np.zeros((dim_copy * dim_copy, dim_copy * dim_copy), dtype=complex)
    for i in range(dim_copy):
        for j in range(dim_copy):
            swap[j * dim_copy + i, i * dim_copy + j] = 1.0
    cswap = np.zeros((dim_full, dim_full), dtype=complex)
    half = dim_copy * dim_copy
    cswap[:half, :half] = np.eye(half)
    cswap[half:, half:] = swap

    circuit = h0 @ cswap @ h0
    sigma = circuit @ rho_full @ circuit.conj().T

    ctrl_plus = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    ctrl_minus = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    obs_plus, obs_minus = _projector_pair(observable)

    probs: dict[tuple[int, int, int], float] = {}
    for x, ctrl in ((1, ctrl_plus), (-1, ctrl_minus)):
        for a2, proj2 in ((1, obs_plus), (-1, obs_minus)):
            for a3, proj3 in ((1, obs_plus), (-1, obs_minus)):
                proj = np.kron(ctrl, np.kron(proj2, proj3))
                probs[(x, a2, a3)] = float(np.trace(proj @ sigma).real)
    return probs


def enumerate_effective_channel(
    n_qubits: int, spec: PauliChannelSpec, tie_handling: str = "pessimistic"
) -> LogicalPauliChannel:
    """Brute-force 4^n Pauli-pattern classification of one QEC round.

    Walks every error pattern with exact rational probabilities and
    classifies its logical residue: patterns whose bit-flip support
    loses the majority vote leave a logical X behind, and the parity of
    (Y on flipped sites) + (Z on unflipped sites) leaves a logical Z.

    ``tie_handling`` selects the even-n half-weight convention:
    "pessimistic" counts every tie as a lost vote (the closed-form
    bookkeeping), "decoder" rescues patterns that do not touch site 0
    (what :func:`qec_round_full` actually does).
    """
    if tie_handling not in ("pessimistic", "decoder"):
        raise ValueError(f"unknown tie_handling {tie_handling!r}")
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    weights = {
        "I": Fraction(spec.p_i),
        "X": Fraction(spec.p_x),
        "Y": Fraction(spec.p_y),
        "Z": Fraction(spec.p_z),
    }
    totals = {"i": Fraction(0), "x": Fraction(0), "z": Fraction(0), "xz": Fraction(0)}
    threshold = math.ceil(n_qubits / 2)
    for pattern in itertools.product("IXYZ", repeat=n_qubits):
        prob = Fraction(1)
        for label in pattern:
            prob *= weights[label]
        if prob == 0:
            continue
        support = [site for site, label in enumerate(pattern) if label in ("X", "Y")]
        phase_parity = sum(1 for label in pattern if label in ("Y", "Z")) % 2
        flips = len(support)
        if 2 * flips == n_qubits:
            # Even-n exact tie: convention-dependent.
            failed = tie_handling == "pessimistic" or 0 in support
        else:
            failed = flips >= threshold
        if failed:
            key = "xz" if phase_parity else "x"
        else:
            key = "z" if phase_parity else "i"
        totals[key] += prob
    return LogicalPauliChannel(
        float(totals["i"]), float(totals["x"]), float(totals["z"]), float(totals["xz"])
    )
