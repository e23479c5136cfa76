"""Logical-qubit model of an n-qubit repetition codespace.

Everything in this module lives in the two-dimensional span of the
all-zero and all-one computational basis states.  Matrices are 2x2
complex numpy arrays with basis order (all-zero, all-one); entry [0, 1]
is the coherence between the two branches.

Conventions that the rest of the package relies on:

* time evolution is ``U = exp(-i t H)`` with hbar = 1 and integer or
  float ``t`` in units of the per-round interrogation time;
* ``lambda * sum_i Z_i`` restricts to ``n * lambda * diag(1, -1)``;
* ``X^(x)n`` restricts to ``[[0, 1], [1, 0]]`` for every n;
* the GHZ-phase readout observable is the logical +Y axis,
  ``[[0, -i], [i, 0]]``, whose +1 eigenstate is
  ``(|0..0> + i |1..1>)/sqrt(2)``.  With the sign conventions above the
  equal superposition probe acquires ``<A>(t) = sin(2 n t lambda)``
  under the single-parameter Hamiltonian.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BASIS_LABELS",
    "HamiltonianKind",
    "HamiltonianSpec",
    "LogicalObservable",
    "LogicalState",
    "ObservableKind",
    "evolve",
    "expectation",
    "ghz_probe",
    "logical_hamiltonian",
    "purity",
    "restrict_observable",
]

#: Row/column order of every 2x2 matrix in this package.
BASIS_LABELS = ("all-zero", "all-one")

_HERMITICITY_TOL = 1e-12
_TRACE_TOL = 1e-10
_EIGENVALUE_FLOOR = -1e-10


def _as_matrix(obj: object) -> np.ndarray:
    mat = np.asarray(obj, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError(f"logical matrices are 2x2, got shape {mat.shape}")
    return mat


@dataclass(frozen=True)
class LogicalState:
    """Density matrix on the codespace.

    ``matrix`` is validated to be Hermitian, unit trace and positive
    semidefinite (up to small numerical tolerances) and stored as a
    read-only copy.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _as_matrix(self.matrix)
        if not np.allclose(mat, mat.conj().T, atol=_HERMITICITY_TOL):
            raise ValueError("density matrix must be Hermitian")
        trace = mat.trace().real
        if abs(trace - 1.0) > _TRACE_TOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        eigenvalues = np.linalg.eigvalsh(mat)
        if eigenvalues.min() < _EIGENVALUE_FLOOR:
            raise ValueError(
                f"density matrix has negative eigenvalue {eigenvalues.min():.3e}"
            )
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_vector(cls, amplitudes: object) -> "LogicalState":
        """Pure state from a length-2 amplitude vector (normalized here)."""
        vec = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if vec.shape != (2,):
            raise ValueError("expected two amplitudes")
        norm = np.linalg.norm(vec)
        if norm < 1e-12:
            raise ValueError("zero vector cannot be normalized")
        vec = vec / norm
        return cls(np.outer(vec, vec.conj()))


class HamiltonianKind(str, enum.Enum):
    """Supported generator families on the codespace."""

    SINGLE_PARAM_Z = "single-param-z"
    TWO_PARAM_XZ = "two-param-xz"


@dataclass(frozen=True)
class HamiltonianSpec:
    """Physical generator acting identically on all n qubits.

    ``couplings`` holds ``(lambda,)`` for the single-parameter kind
    (``lambda * sum_i Z_i``) and ``(lambda1, lambda2)`` for the
    two-parameter kind (``lambda1 * X^(x)n + lambda2 * sum_i Z_i``).
    """

    kind: HamiltonianKind
    n_qubits: int
    couplings: tuple[float, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.kind, HamiltonianKind):
            object.__setattr__(self, "kind", HamiltonianKind(self.kind))
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        couplings = tuple(float(c) for c in self.couplings)
        expected = 1 if self.kind is HamiltonianKind.SINGLE_PARAM_Z else 2
        if len(couplings) != expected:
            raise ValueError(
                f"{self.kind.value} expects {expected} coupling(s), "
                f"got {len(couplings)}"
            )
        object.__setattr__(self, "couplings", couplings)


class ObservableKind(str, enum.Enum):
    #: +1 eigenprojector along the logical Y axis; see module docstring.
    GHZ_Y_PROJECTOR = "ghz-y-projector"
    #: Tensor power of single-qubit Y, restricted to the codespace.
    Y_TO_N = "y-to-n"


@dataclass(frozen=True)
class LogicalObservable:
    """Bounded Hermitian observable on the codespace (spectrum within [-1, 1])."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _as_matrix(self.matrix)
        if not np.allclose(mat, mat.conj().T, atol=_HERMITICITY_TOL):
            raise ValueError("observable must be Hermitian")
        spectral_norm = float(np.abs(np.linalg.eigvalsh(mat)).max())
        if spectral_norm > 1.0 + 1e-9:
            raise ValueError(
                f"observable spectrum must lie in [-1, 1], norm is {spectral_norm}"
            )
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)


def ghz_probe() -> LogicalState:
    """Equal superposition of the two code branches (the metrology probe)."""
    return LogicalState.from_vector((1.0, 1.0))


def logical_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    """Restriction of the physical generator to the codespace.

    ``sum_i Z_i`` acts as ``n * diag(1, -1)`` because every qubit of the
    all-zero branch contributes +1 and of the all-one branch -1, while
    ``X^(x)n`` flips every qubit at once and therefore swaps the branches.
    """
    n = spec.n_qubits
    if spec.kind is HamiltonianKind.SINGLE_PARAM_Z:
        (lam,) = spec.couplings
        return np.array([[n * lam, 0.0], [0.0, -n * lam]], dtype=complex)
    lam1, lam2 = spec.couplings
    return np.array([[n * lam2, lam1], [lam1, -n * lam2]], dtype=complex)


def evolve(state: LogicalState, spec: HamiltonianSpec, t: float) -> LogicalState:
    """Propagate ``state`` for time ``t`` under ``exp(-i t H)``."""
    if t < 0:
        raise ValueError(f"evolution time must be >= 0, got {t}")
    ham = logical_hamiltonian(spec)
    energies, modes = np.linalg.eigh(ham)
    unitary = (modes * np.exp(-1j * t * energies)) @ modes.conj().T
    return LogicalState(unitary @ state.matrix @ unitary.conj().T)


def restrict_observable(kind: ObservableKind, n_qubits: int) -> LogicalObservable:
    """Codespace restriction of the named physical readout observable."""
    kind = ObservableKind(kind)
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    if kind is ObservableKind.GHZ_Y_PROJECTOR:
        # 2|g><g| - I for g = (|0..0> + i|1..1>)/sqrt(2), independent of n.
        return LogicalObservable(np.array([[0.0, -1j], [1j, 0.0]]))
    # <0..0| Y^(x)n |1..1> = (-i)^n; the diagonal vanishes since Y flips
    # every qubit.
    phase = (-1j) ** n_qubits
    return LogicalObservable(np.array([[0.0, phase], [np.conj(phase), 0.0]]))


def expectation(state: LogicalState, observable: LogicalObservable) -> float:
    """Real expectation value tr(A rho)."""
    value = np.trace(observable.matrix @ state.matrix)
    if abs(value.imag) > 1e-9:
        raise ValueError(f"expectation has spurious imaginary part {value.imag:.3e}")
    return float(value.real)


def purity(state: LogicalState) -> float:
    """tr(rho^2); equals the swap-test control-bit mean for two copies."""
    return float(np.trace(state.matrix @ state.matrix).real)
