"""Temporal Bell combination, direct and after delayed-choice erasure.

The combination is ``|K12 + K23 + K34 - K14|`` over memory z-z correlations.
In direct mode all four come from the recorded final state. In erased mode
memories 2 and 3 are first measured in x and one outcome pair is kept; this
removes the z which-path record at times 4 and 6 and K14 becomes the
coherent two-time correlation of S.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from .protocol import ProtocolConfig, ProtocolRun, memory_correlation, run_protocol
from .statevector import (
    PauliAxis,
    PauliString,
    StateVector,
    expect_pauli,
    project_measure,
    spin_to_bit,
)

CLASSICAL_BOUND = 2.0
VIOLATION_GUARD = 1e-10
ERASED_MEMORIES = (2, 3)


class OutcomePair(NamedTuple):
    eps2: int
    eps3: int

    @classmethod
    def parse(cls, text: str) -> "OutcomePair":
        """``"+-"`` style, or ``"pm"`` aliases (p = +1, m = -1)."""
        table = {"+": 1, "p": 1, "-": -1, "m": -1}
        text = text.strip().lower()
        if len(text) != 2 or any(ch not in table for ch in text):
            raise ValueError(f"outcome pair must look like '++', '+-', 'pm', got {text!r}")
        return cls(table[text[0]], table[text[1]])

    def label(self) -> str:
        return "".join("+" if v > 0 else "-" for v in self)


ALL_OUTCOMES = tuple(OutcomePair(a, b) for a, b in itertools.product((1, -1), repeat=2))


@dataclass(frozen=True)
class ConditionalResult:
    outcomes: OutcomePair
    probability: float
    k14: float
    post_state: StateVector = field(repr=False)


@dataclass(frozen=True)
class BellReport:
    mode: str
    k12: float
    k23: float
    k34: float
    k14: float
    outcomes: OutcomePair | None = None
    provenance: dict = field(default_factory=dict, compare=False)
    bound: float = CLASSICAL_BOUND

    @property
    def bell_value(self) -> float:
        return bell_combination(self.k12, self.k23, self.k34, self.k14)

    @property
    def violated(self) -> bool:
        return self.bell_value > self.bound + VIOLATION_GUARD


def bell_combination(k12: float, k23: float, k34: float, k14: float) -> float:
    return abs(k12 + k23 + k34 - k14)


def _require_bell_size(run: ProtocolRun) -> None:
    if run.config.num_memories < 4:
        raise ValueError("the temporal Bell combination needs at least 4 memories")


def _validate_outcomes(outcomes) -> OutcomePair:
    outcomes = OutcomePair(*outcomes)
    for v in outcomes:
        spin_to_bit(v)
    return outcomes


def delayed_choice_erase(
    run: ProtocolRun, outcomes: OutcomePair | tuple[int, int], order: tuple[int, int] = ERASED_MEMORIES
) -> ConditionalResult:
    """Measure x on memories 2 and 3 of the final state and keep ``outcomes``.

    ``order`` picks which memory is projected first; the projections commute.
    Raises ImpossibleOutcomeError if the pair cannot occur.
    """
    _require_bell_size(run)
    outcomes = _validate_outcomes(outcomes)
    if sorted(order) != list(ERASED_MEMORIES):
        raise ValueError(f"order must be a permutation of {ERASED_MEMORIES}")
    wanted = dict(zip(ERASED_MEMORIES, outcomes))
    state, prob = run.final, 1.0
    for mu in order:
        state, p = project_measure(state, mu, PauliAxis.X, wanted[mu])
        prob *= p
    k14 = expect_pauli(state, PauliString.z(1, 4))
    return ConditionalResult(outcomes, prob, k14, state)


def post_selected_state(run: ProtocolRun, outcomes: OutcomePair | tuple[int, int]) -> StateVector:
    return delayed_choice_erase(run, outcomes).post_state


def erasure_branches(run: ProtocolRun) -> list[ConditionalResult]:
    """All four outcome pairs, (+,+) first."""
    return [delayed_choice_erase(run, o) for o in ALL_OUTCOMES]


def bell_value_direct(alpha: float, num_memories: int = 4) -> BellReport:
    run = run_protocol(ProtocolConfig(alpha, num_memories))
    _require_bell_size(run)
    return BellReport(
        mode="direct",
        k12=memory_correlation(run, 1, 2),
        k23=memory_correlation(run, 2, 3),
        k34=memory_correlation(run, 3, 4),
        k14=memory_correlation(run, 1, 4),
        provenance={k: "direct run" for k in ("k12", "k23", "k34", "k14")},
    )


def bell_value_erased(
    alpha: float, outcomes: OutcomePair | tuple[int, int] = (1, 1), num_memories: int = 4
) -> BellReport:
    """Nearest-neighbour terms from separate direct runs, K14 from the erased run.

    The four correlations are incompatible measurements, so each comes from
    its own run of the protocol.
    """
    config = ProtocolConfig(alpha, num_memories)
    k = {}
    for a, b in ((1, 2), (2, 3), (3, 4)):
        k[f"k{a}{b}"] = memory_correlation(run_protocol(config), a, b)
    outcomes = _validate_outcomes(outcomes)
    erased = delayed_choice_erase(run_protocol(config), outcomes)
    prov = {name: f"direct run {n}" for n, name in enumerate(k, start=1)}
    prov["k14"] = f"erased run, x outcomes {outcomes.label()} on memories 2,3"
    return BellReport(mode="erased", k14=erased.k14, outcomes=outcomes, provenance=prov, **k)


def classical_assignment_value(s: tuple[int, int, int, int]) -> float:
    s1, s2, s3, s4 = s
    return float(abs(s1 * s2 + s2 * s3 + s3 * s4 - s1 * s4))


def classical_bound_exhaustive() -> float:
    """Largest Bell combination over every deterministic +-1 history."""
    return max(classical_assignment_value(s) for s in itertools.product((-1, 1), repeat=4))
