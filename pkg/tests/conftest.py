import numpy as np
import pytest
from hypothesis import settings

from temporal_bell.statevector import StateVector, pauli_matrix

settings.register_profile("ci", max_examples=50, deadline=None)
settings.load_profile("ci")

ACCEPTANCE_LINES: list[str] = []


def random_state(n: int, seed: int) -> StateVector:
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def dense_1q(n: int, q: int, m: np.ndarray) -> np.ndarray:
    """Full 2^n operator for a single-qubit matrix; qubit 0 is the last kron factor."""
    out = np.eye(1, dtype=complex)
    for k in reversed(range(n)):
        out = np.kron(out, m if k == q else np.eye(2))
    return out


def dense_pauli(n: int, factors: dict) -> np.ndarray:
    out = np.eye(1 << n, dtype=complex)
    for q, axis in factors.items():
        out = dense_1q(n, q, pauli_matrix(axis)) @ out
    return out


@pytest.fixture
def acceptance_report():
    def record(number: int, text: str, passed: bool):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {text}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
