"""Dense statevector for a register of spin-1/2 systems.

Basis convention: qubit ``k`` is bit ``k`` of the basis index (qubit 0 is the
least significant bit). Spin value -1 is bit 0 and +1 is bit 1, so the
z observable on one spin is ``diag(-1, +1)`` in bit order and its eigenvalue
is the spin value itself. X is the usual flip matrix, and Y is fixed by
``XY = iZ`` under that Z.

Qubit 0 is the reference spin S, qubits 1..M are the memories.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import cos, sin
from typing import Iterable, Mapping, Sequence

import numpy as np

NORM_TOL = 1e-12
IMPOSSIBLE_PROB = 1e-14


class ImpossibleOutcomeError(ValueError):
    """Post-selection on an outcome whose Born probability is (numerically) zero."""

    def __init__(self, qubit: int, axis: "PauliAxis", outcome: int, probability: float):
        self.qubit = qubit
        self.axis = axis
        self.outcome = outcome
        self.probability = probability
        super().__init__(
            f"outcome {outcome:+d} of {axis.name} on qubit {qubit} has probability "
            f"{probability:.3e}"
        )


class InvariantError(RuntimeError):
    """A numerical invariant (unit norm, finiteness) was breached."""


class PauliAxis(enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"

    @classmethod
    def parse(cls, value: "PauliAxis | str") -> "PauliAxis":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown Pauli axis {value!r}") from None


_PAULI = {
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAxis.Y: np.array([[0, 1j], [-1j, 0]], dtype=complex),
    PauliAxis.Z: np.array([[-1, 0], [0, 1]], dtype=complex),
}


def pauli_matrix(axis: PauliAxis | str) -> np.ndarray:
    """2x2 matrix of a Pauli operator in the bit-ordered basis (|-1>, |+1>)."""
    return _PAULI[PauliAxis.parse(axis)].copy()


def spin_to_bit(value: int) -> int:
    if value not in (-1, 1):
        raise ValueError(f"spin value must be -1 or +1, got {value!r}")
    return (value + 1) // 2


def bit_to_spin(bit: int) -> int:
    return 2 * bit - 1


@dataclass(frozen=True)
class StateVector:
    num_qubits: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be at least 1")
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.shape[0] != 1 << self.num_qubits:
            raise ValueError(
                f"expected {1 << self.num_qubits} amplitudes, got {amps.shape[0]}"
            )
        if not np.all(np.isfinite(amps)):
            raise InvariantError("non-finite amplitude")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        _check_same_register(self, other)
        return complex(np.vdot(self.amps, other.amps))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def allclose(self, other: "StateVector", atol: float = 1e-10) -> bool:
        _check_same_register(self, other)
        return bool(np.allclose(self.amps, other.amps, rtol=0.0, atol=atol))

    def check_norm(self, tol: float = NORM_TOL) -> None:
        drift = abs(self.norm() - 1.0)
        if drift > tol:
            raise InvariantError(f"norm drift {drift:.3e} exceeds {tol:.1e}")

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit; axis ``n-1-k`` is qubit ``k``."""
        return self.amps.reshape((2,) * self.num_qubits)

    def qubit_axis(self, q: int) -> int:
        _check_qubit(q, self.num_qubits)
        return self.num_qubits - 1 - q


def _check_qubit(q: int, n: int) -> None:
    if not isinstance(q, (int, np.integer)) or not 0 <= q < n:
        raise ValueError(f"qubit index {q!r} out of range for {n} qubits")


def _check_same_register(a: StateVector, b: StateVector) -> None:
    if a.num_qubits != b.num_qubits:
        raise ValueError("states live on registers of different size")


def basis_index(values: Sequence[int]) -> int:
    return sum(spin_to_bit(v) << k for k, v in enumerate(values))


def init_basis_state(num_qubits: int, values: Sequence[int]) -> StateVector:
    """Product state with spin ``values[k]`` on qubit ``k``."""
    if len(values) != num_qubits:
        raise ValueError(f"{num_qubits} qubits but {len(values)} spin values")
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[basis_index(values)] = 1.0
    return StateVector(num_qubits, amps)


def apply_1q(state: StateVector, q: int, matrix: np.ndarray) -> StateVector:
    """Apply a 2x2 matrix to qubit ``q``."""
    ax = state.qubit_axis(q)
    psi = np.moveaxis(state.tensor(), ax, 0)
    out = np.tensordot(matrix, psi, axes=([1], [0]))
    return StateVector(state.num_qubits, np.moveaxis(out, 0, ax).reshape(-1))


def rx_matrix(alpha: float) -> np.ndarray:
    c, s = cos(alpha / 2), sin(alpha / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def apply_rx(state: StateVector, q: int, alpha: float) -> StateVector:
    """exp(-i alpha X / 2) on qubit ``q``."""
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    return apply_1q(state, q, rx_matrix(alpha))


def apply_cnot0(state: StateVector, control: int, target: int) -> StateVector:
    """Flip ``target`` iff ``control`` is in |-1> (bit 0)."""
    _check_qubit(control, state.num_qubits)
    _check_qubit(target, state.num_qubits)
    if control == target:
        raise ValueError("control and target must differ")
    idx = np.arange(state.dim)
    cbit = 1 << control
    tbit = 1 << target
    src = np.where(idx & cbit, idx, idx ^ tbit)
    return StateVector(state.num_qubits, state.amps[src])


class PauliString:
    """Tensor product of Pauli factors; identity on qubits not listed."""

    __slots__ = ("factors",)

    def __init__(self, factors: Mapping[int, PauliAxis | str] | Iterable[tuple[int, PauliAxis | str]] = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        out: dict[int, PauliAxis] = {}
        for q, axis in items:
            if q in out:
                raise ValueError(f"duplicate qubit {q} in Pauli string")
            if not isinstance(q, (int, np.integer)) or q < 0:
                raise ValueError(f"invalid qubit index {q!r}")
            out[int(q)] = PauliAxis.parse(axis)
        self.factors = dict(sorted(out.items()))

    @classmethod
    def z(cls, *qubits: int) -> "PauliString":
        return cls((q, PauliAxis.Z) for q in qubits)

    @classmethod
    def x(cls, *qubits: int) -> "PauliString":
        return cls((q, PauliAxis.X) for q in qubits)

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        """``"Z0 Z1"`` or ``"X2*Z4"`` style labels."""
        parts = text.replace("*", " ").split()
        return cls((int(p[1:]), p[0]) for p in parts)

    def __eq__(self, other):
        return isinstance(other, PauliString) and self.factors == other.factors

    def __hash__(self):
        return hash(tuple(self.factors.items()))

    def __repr__(self):
        body = " ".join(f"{a.value}{q}" for q, a in self.factors.items()) or "I"
        return f"PauliString({body!r})"


def apply_pauli(state: StateVector, obs: PauliString) -> StateVector:
    for q, axis in obs.factors.items():
        state = apply_1q(state, q, _PAULI[axis])
    return state


def expect_pauli(state: StateVector, obs: PauliString) -> float:
    """<psi| obs |psi> for a Hermitian Pauli string; imaginary residue is checked."""
    for q in obs.factors:
        _check_qubit(q, state.num_qubits)
    val = np.vdot(state.amps, apply_pauli(state, obs).amps)
    if abs(val.imag) > NORM_TOL:
        raise InvariantError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def _project(state: StateVector, q: int, axis: PauliAxis, outcome: int) -> np.ndarray:
    # (I + s P) / 2 applied to the state, unnormalized
    sign = 1 if spin_to_bit(outcome) else -1
    flipped = apply_1q(state, q, _PAULI[axis]).amps
    return (state.amps + sign * flipped) / 2


def outcome_probability(state: StateVector, q: int, axis: PauliAxis | str, outcome: int) -> float:
    axis = PauliAxis.parse(axis)
    if axis is PauliAxis.Y:
        raise ValueError("Y-axis measurement is not supported")
    _check_qubit(q, state.num_qubits)
    v = _project(state, q, axis, outcome)
    return float(np.vdot(v, v).real)


def project_measure(
    state: StateVector, q: int, axis: PauliAxis | str, outcome: int
) -> tuple[StateVector, float]:
    """Projective measurement of ``axis`` on qubit ``q``, post-selected on ``outcome``.

    Returns the renormalized state and the Born probability. Raises
    ImpossibleOutcomeError when that probability is below 1e-14.
    """
    axis = PauliAxis.parse(axis)
    if axis is PauliAxis.Y:
        raise ValueError("Y-axis measurement is not supported")
    _check_qubit(q, state.num_qubits)
    v = _project(state, q, axis, outcome)
    prob = float(np.vdot(v, v).real)
    if prob < IMPOSSIBLE_PROB:
        raise ImpossibleOutcomeError(q, axis, outcome, prob)
    return StateVector(state.num_qubits, v / np.sqrt(prob)), min(prob, 1.0)
