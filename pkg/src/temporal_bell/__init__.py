"""Temporal Bell inequality and delayed-choice erasure on a quantum Turing spin network."""

__version__ = "0.1.0"

from .statevector import (
    ImpossibleOutcomeError,
    InvariantError,
    PauliAxis,
    PauliString,
    StateVector,
    apply_cnot0,
    apply_rx,
    expect_pauli,
    init_basis_state,
    project_measure,
)
from .protocol import (
    ProtocolConfig,
    ProtocolRun,
    ResourceLimitError,
    memory_correlation,
    run_protocol,
    trajectory_oracle,
    two_time_correlation,
)
from .histories import (
    ReadoutBasis,
    enumerate_x_histories,
    enumerate_z_histories,
    rewrite_x_history_in_z,
)
from .erasure import (
    BellReport,
    OutcomePair,
    bell_value_direct,
    bell_value_erased,
    classical_bound_exhaustive,
    delayed_choice_erase,
    post_selected_state,
)
