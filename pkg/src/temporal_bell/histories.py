"""Internal histories of the head spin, keyed by memory readouts.

A z-history fixes every memory's z value; since memory ``k`` recorded the
negated z value of S at time ``2k``, it fixes S's whole trajectory and has
the amplitude ``prod_k <z_k| R(alpha) |z_{k-1}>`` with ``z_0 = -1``.

An x-history fixes every memory's x value instead. Projecting the final
state on it leaves S in a conditional spinor; the Born weight of that
branch is the history's probability. Each x-history is a coherent sum over
all z-histories, with coefficients ``prod_k <x_k | m_k>``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import sqrt
from typing import Sequence

import numpy as np

from .protocol import MAX_ENUMERATED_MEMORIES, ProtocolConfig, ResourceLimitError
from .statevector import StateVector, pauli_matrix, rx_matrix, spin_to_bit

_INV_SQRT2 = 1 / sqrt(2)
_Z = pauli_matrix("Z")
_KET = {-1: np.array([1, 0], dtype=complex), 1: np.array([0, 1], dtype=complex)}
_XKET = {-1: np.array([1, -1], dtype=complex) * _INV_SQRT2,
         1: np.array([1, 1], dtype=complex) * _INV_SQRT2}


class ReadoutBasis(enum.Enum):
    Z = "Z"
    X = "X"

    @classmethod
    def parse(cls, value: "ReadoutBasis | str") -> "ReadoutBasis":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown readout basis {value!r}") from None


@dataclass(frozen=True)
class History:
    """One branch of the final state.

    ``s_state`` is the normalized conditional spinor of S in the branch.
    For Z histories ``amplitude`` is the complex branch amplitude (phase
    kept); for X histories the conditional spinor is not a single basis
    state, so ``amplitude`` is the real branch norm.
    """

    basis: ReadoutBasis
    readouts: tuple[int, ...]
    amplitude: complex
    probability: float
    s_state: np.ndarray = field(repr=False, compare=False)

    @property
    def s_trajectory(self) -> tuple[int, ...]:
        """S's z values at times 2, 4, ..., 2M (Z histories only)."""
        if self.basis is not ReadoutBasis.Z:
            raise ValueError("x-histories carry no z trajectory of S")
        return tuple(-m for m in self.readouts)


@dataclass(frozen=True)
class HistoryTable:
    config: ProtocolConfig
    basis: ReadoutBasis
    entries: tuple[History, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def probabilities(self) -> np.ndarray:
        return np.array([h.probability for h in self.entries])

    def total_probability(self) -> float:
        return float(self.probabilities().sum())

    def lookup(self, readouts: Sequence[int]) -> History:
        key = tuple(readouts)
        for h in self.entries:
            if h.readouts == key:
                return h
        raise KeyError(key)


def _check_size(config: ProtocolConfig) -> None:
    if config.num_memories > MAX_ENUMERATED_MEMORIES:
        raise ResourceLimitError(
            f"2**{config.num_memories} histories exceeds the enumeration limit"
        )


def _check_readouts(config: ProtocolConfig, readouts: Sequence[int]) -> tuple[int, ...]:
    readouts = tuple(int(r) for r in readouts)
    if len(readouts) != config.num_memories:
        raise ValueError(f"expected {config.num_memories} readouts, got {len(readouts)}")
    for r in readouts:
        spin_to_bit(r)
    return readouts


def all_readouts(num_memories: int):
    """Readout tuples ordered with memory 1 first, -1 before +1."""
    return itertools.product((-1, 1), repeat=num_memories)


def z_history_amplitude(config: ProtocolConfig, readouts: Sequence[int]) -> complex:
    rot = rx_matrix(config.alpha)
    amp, prev = 1.0 + 0j, 0  # S starts at -1, bit 0
    for m in readouts:
        cur = spin_to_bit(-m)
        amp *= rot[cur, prev]
        prev = cur
    return complex(amp)


def z_branch_spinor(config: ProtocolConfig, readouts: Sequence[int]) -> np.ndarray:
    """Unnormalized S spinor of a z-branch: amplitude times |z_M>."""
    readouts = _check_readouts(config, readouts)
    return z_history_amplitude(config, readouts) * _KET[-readouts[-1]]


def enumerate_z_histories(config: ProtocolConfig) -> HistoryTable:
    _check_size(config)
    entries = []
    for r in all_readouts(config.num_memories):
        amp = z_history_amplitude(config, r)
        entries.append(History(ReadoutBasis.Z, r, amp, abs(amp) ** 2, _KET[-r[-1]].copy()))
    return HistoryTable(config, ReadoutBasis.Z, tuple(entries))


def x_branch_spinor(config: ProtocolConfig, x_readouts: Sequence[int]) -> np.ndarray:
    """Unnormalized S spinor left after projecting every memory on its x readout.

    Projecting memory k on x = +1 contributes 1/sqrt(2); on x = -1 it
    contributes z_k/sqrt(2), which is the Z operator acting on S right after
    the k-th rotation.
    """
    x_readouts = _check_readouts(config, x_readouts)
    rot = rx_matrix(config.alpha)
    ops = [(_Z if x < 0 else np.eye(2)) @ rot * _INV_SQRT2 for x in x_readouts]
    total = reduce(lambda acc, op: op @ acc, ops, np.eye(2, dtype=complex))
    return total @ _KET[-1]


def enumerate_x_histories(config: ProtocolConfig) -> HistoryTable:
    _check_size(config)
    entries = []
    for r in all_readouts(config.num_memories):
        spinor = x_branch_spinor(config, r)
        weight = float(np.vdot(spinor, spinor).real)
        norm = sqrt(weight)
        entries.append(History(ReadoutBasis.X, r, complex(norm), weight, spinor / norm))
    return HistoryTable(config, ReadoutBasis.X, tuple(entries))


def rewrite_x_history_in_z(
    config: ProtocolConfig, x_readouts: Sequence[int]
) -> dict[tuple[int, ...], complex]:
    """Coefficients expressing an x-history as a superposition of z-histories.

    ``sum_z coeff[z] * z_branch_spinor(z)`` equals ``x_branch_spinor(x)``.
    The coefficient is ``prod_k <x_k | m_k>`` over memory readouts ``m``.
    """
    _check_size(config)
    x_readouts = _check_readouts(config, x_readouts)
    out = {}
    for z in all_readouts(config.num_memories):
        c = 1.0 + 0j
        for x, m in zip(x_readouts, z):
            c *= np.vdot(_XKET[x], _KET[m])
        out[z] = complex(c)
    return out


def network_state(spinor: np.ndarray, memory_kets: Sequence[np.ndarray]) -> StateVector:
    """Product of an S spinor with per-memory kets, in the register's bit order."""
    vec = spinor
    for ket in memory_kets:
        vec = np.kron(ket, vec)
    return StateVector(len(memory_kets) + 1, vec)


def x_branch_network_state(config: ProtocolConfig, x_readouts: Sequence[int]) -> StateVector:
    """Unnormalized projection of the final state on the given memory x readouts."""
    x_readouts = _check_readouts(config, x_readouts)
    spinor = x_branch_spinor(config, x_readouts)
    return network_state(spinor, [_XKET[x] for x in x_readouts])
