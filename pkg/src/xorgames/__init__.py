"""Classical (Bell) and single-ebit quantum (Tsirelson) values of 2-player XOR games."""

from .catalog import EvenOrTooSmallN, make_chsh, make_eaos, make_odd_cycle
from .classical import (
    ClassicalResult,
    DeterministicStrategy,
    GameTooLargeForEnumeration,
    WeightsNotNormalized,
    classical_value,
    evaluate_deterministic,
    mixed_strategy_value,
)
from .game_model import (
    DuplicatePair,
    EmptyGame,
    IndexOutOfRange,
    PairEntry,
    ProbabilityNotNormalized,
    SizeMismatch,
    SpecFormatError,
    XorGame,
    XorGameError,
    load_game,
    random_answer_value,
    validate,
)
from .kernel import (
    BellState,
    ParityDistribution,
    TwoQubitState,
    apply_rotations,
    bell_vector,
    joint_outcome_probs,
    parity_distribution,
    theta_argument,
)
from .montecarlo import SimulationReport, simulate_classical, simulate_quantum
from .quantum import (
    OptimizationResult,
    QuantumStrategy,
    SolverConfig,
    gradient,
    objective,
    odd_cycle_closed_form,
    quantum_value,
)

__version__ = "0.1.0"
