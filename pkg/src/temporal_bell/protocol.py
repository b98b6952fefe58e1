"""Quantum Turing dynamics: the head spin S rotates, then a memory records it.

Step ``2mu - 1`` rotates S by ``alpha`` about x; step ``2mu`` applies the
zero-controlled NOT from S onto memory ``mu``. Every spin starts at -1.
Memory ``mu`` therefore holds the negated z value of S at time ``2mu``, and
the z-z correlation of two memories is a two-time correlation of S.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import cos, isfinite, sin

from .statevector import (
    PauliString,
    StateVector,
    apply_cnot0,
    apply_rx,
    expect_pauli,
    init_basis_state,
)

HEAD = 0
MAX_ENUMERATED_MEMORIES = 12


class ResourceLimitError(ValueError):
    """Requested enumeration is larger than the supported 2**12 branches."""


@dataclass(frozen=True)
class ProtocolConfig:
    alpha: float
    num_memories: int = 4

    def __post_init__(self):
        if not isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if int(self.num_memories) != self.num_memories or self.num_memories < 1:
            raise ValueError("num_memories must be an integer >= 1")

    @property
    def num_qubits(self) -> int:
        return self.num_memories + 1

    @property
    def total_steps(self) -> int:
        return 2 * self.num_memories


@dataclass(frozen=True)
class Snapshot:
    step: int
    state: StateVector


@dataclass(frozen=True)
class ProtocolRun:
    config: ProtocolConfig
    snapshots: tuple[Snapshot, ...]

    @property
    def final(self) -> StateVector:
        return self.snapshots[-1].state

    def at(self, step: int) -> StateVector:
        return self.snapshots[step].state


@dataclass(frozen=True)
class TwoTimeCorrelation:
    t1: int
    t2: int
    value: float


def initial_state(config: ProtocolConfig) -> StateVector:
    return init_basis_state(config.num_qubits, [-1] * config.num_qubits)


def run_protocol(config: ProtocolConfig) -> ProtocolRun:
    state = initial_state(config)
    snaps = [Snapshot(0, state)]
    for step in range(1, config.total_steps + 1):
        if step % 2:
            state = apply_rx(state, HEAD, config.alpha)
        else:
            state = apply_cnot0(state, HEAD, step // 2)
        state.check_norm()
        snaps.append(Snapshot(step, state))
    return ProtocolRun(config, tuple(snaps))


def _check_memory_pair(run: ProtocolRun, mu1: int, mu2: int) -> None:
    m = run.config.num_memories
    if not (1 <= mu1 < mu2 <= m):
        raise ValueError(f"need 1 <= mu1 < mu2 <= {m}, got ({mu1}, {mu2})")


def memory_correlation(run: ProtocolRun, mu1: int, mu2: int) -> float:
    """K_zz between memories ``mu1`` and ``mu2`` on the final state."""
    _check_memory_pair(run, mu1, mu2)
    return expect_pauli(run.final, PauliString.z(mu1, mu2))


def two_time_correlation(run: ProtocolRun, t1: int, t2: int) -> TwoTimeCorrelation:
    """C(t1, t2) of the head spin, read off the memories written at t1 and t2."""
    if t1 % 2 or t2 % 2:
        raise ValueError(f"only even (recording) steps carry S's state, got ({t1}, {t2})")
    if not (2 <= t1 < t2 <= run.config.total_steps):
        raise ValueError(f"need 2 <= t1 < t2 <= {run.config.total_steps}")
    return TwoTimeCorrelation(t1, t2, memory_correlation(run, t1 // 2, t2 // 2))


def even_time_pairs(num_memories: int) -> list[tuple[int, int]]:
    return [(2 * a, 2 * b) for a, b in itertools.combinations(range(1, num_memories + 1), 2)]


def trajectory_oracle(config: ProtocolConfig) -> dict[tuple[int, int], float]:
    """Classical two-time correlations from projective z trajectories of S.

    Each recording is replaced by a projective z measurement of S. Between
    measurements S keeps its value with probability cos^2(alpha/2) and flips
    with sin^2(alpha/2). Correlations are over memory values (= -S value).
    Independent of the statevector machinery.
    """
    m = config.num_memories
    if m > MAX_ENUMERATED_MEMORIES:
        raise ResourceLimitError(f"2**{m} trajectories exceeds the enumeration limit")
    p_stay = cos(config.alpha / 2) ** 2
    p_flip = sin(config.alpha / 2) ** 2
    pairs = even_time_pairs(m)
    acc = {pair: 0.0 for pair in pairs}
    for traj in itertools.product((-1, 1), repeat=m):
        p, prev = 1.0, -1
        for s in traj:
            p *= p_stay if s == prev else p_flip
            prev = s
        if p == 0.0:
            continue
        mem = [-s for s in traj]
        for t1, t2 in pairs:
            acc[(t1, t2)] += p * mem[t1 // 2 - 1] * mem[t2 // 2 - 1]
    return acc
