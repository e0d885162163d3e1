"""Exact two-qubit state oracle for the single-ebit strategy family.

States are real 4-vectors over the computational basis ``|00>, |01>, |10>, |11>``
(first qubit is Alice's). Measurement outcome +1 of ``P = |0><0| - |1><1|``
is answer bit 0 and -1 is bit 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

_NORM_TOL = 1e-12


class BellState(enum.Enum):
    """Bell state ``|B_xy> = (|0y> + (-1)^x |1 y'>) / sqrt(2)``, ``y'`` = not y."""

    PHI_PLUS = (0, 0)
    PHI_MINUS = (1, 0)
    PSI_PLUS = (0, 1)
    PSI_MINUS = (1, 1)

    @property
    def x(self) -> int:
        return self.value[0]

    @property
    def y(self) -> int:
        return self.value[1]

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_bits(cls, x: int, y: int) -> "BellState":
        return cls((int(x), int(y)))

    @classmethod
    def parse(cls, text: str) -> "BellState":
        key = text.strip().lower().replace("φ", "phi").replace("ψ", "psi").replace("−", "-")
        key = key.replace("_", "").replace(" ", "")
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown Bell state {text!r}") from None


_LABELS = {
    BellState.PHI_PLUS: "φ+",
    BellState.PHI_MINUS: "φ−",
    BellState.PSI_PLUS: "ψ+",
    BellState.PSI_MINUS: "ψ−",
}
_ALIASES = {}
for _b, _names in {
    BellState.PHI_PLUS: ("phi+", "phiplus", "b00", "00"),
    BellState.PHI_MINUS: ("phi-", "phiminus", "b10", "10"),
    BellState.PSI_PLUS: ("psi+", "psiplus", "b01", "01"),
    BellState.PSI_MINUS: ("psi-", "psiminus", "b11", "11"),
}.items():
    for _n in _names:
        _ALIASES[_n] = _b

ALL_BELL_STATES = (BellState.PHI_PLUS, BellState.PHI_MINUS, BellState.PSI_PLUS, BellState.PSI_MINUS)


@dataclass(frozen=True)
class TwoQubitState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=float).reshape(4)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = _NORM_TOL) -> bool:
        return abs(float(self.amplitudes @ self.amplitudes) - 1.0) <= tol


@dataclass(frozen=True)
class ParityDistribution:
    p_even: float
    p_odd: float


def bell_vector(b: BellState) -> TwoQubitState:
    x, y = b.value
    amps = np.zeros(4)
    amps[y] = 1.0  # |0 y>
    amps[2 + (1 - y)] = (-1) ** x  # |1 not-y>
    return TwoQubitState(amps / math.sqrt(2.0))


def rotation(theta: float) -> np.ndarray:
    """Single-qubit ``R(theta)|y> = cos(theta)|y> + (-1)^y sin(theta)|not y>``."""
    c, s = math.cos(theta), math.sin(theta)
    # columns are images of |0>, |1>
    return np.array([[c, -s], [s, c]])


def apply_rotations(state: TwoQubitState, alpha: float, beta: float) -> TwoQubitState:
    """Apply ``R(alpha)`` to Alice's qubit and ``R(beta)`` to Bob's."""
    op = np.kron(rotation(alpha), rotation(beta))
    return TwoQubitState(op @ state.amplitudes)


def joint_outcome_probs(state: TwoQubitState) -> np.ndarray:
    """Computational-basis outcome probabilities as a 2x2 array indexed ``[a, b]``."""
    probs = state.amplitudes**2
    return probs.reshape(2, 2)


def parity_distribution(state: TwoQubitState) -> ParityDistribution:
    p = joint_outcome_probs(state)
    return ParityDistribution(p_even=float(p[0, 0] + p[1, 1]), p_odd=float(p[0, 1] + p[1, 0]))


# theta = sign_alpha * alpha + sign_beta * beta + offset, per Bell state
THETA_COEFFS = {
    BellState.PHI_PLUS: (-1.0, 1.0, 0.0),
    BellState.PHI_MINUS: (1.0, 1.0, 0.0),
    BellState.PSI_PLUS: (1.0, 1.0, math.pi / 2),
    BellState.PSI_MINUS: (-1.0, 1.0, math.pi / 2),
}


def theta_argument(b: BellState, alpha, beta):
    """Angle whose ``cos**2`` is the even-parity probability after rotating ``b``.

    Works elementwise on arrays.
    """
    ca, cb, off = THETA_COEFFS[b]
    return off + ca * alpha + cb * beta


def parity_observable() -> np.ndarray:
    """``P (x) P`` in the computational basis."""
    p = np.diag([1.0, -1.0])
    return np.kron(p, p)


def bell_decomposition_of_parity() -> np.ndarray:
    """``sum_xy (-1)^y |B_xy><B_xy|`` built from the Bell vectors."""
    out = np.zeros((4, 4))
    for b in ALL_BELL_STATES:
        v = bell_vector(b).amplitudes
        out += (-1) ** b.y * np.outer(v, v)
    return out


def kernel_agreement(samples: int = 1000, seed: int = 0) -> float:
    """Largest deviation between the state oracle's even-parity probability and
    ``cos**2(theta)`` over random angle pairs and all four Bell states."""
    rng = np.random.default_rng(seed)
    angles = rng.uniform(-math.pi, math.pi, size=(samples, 2))
    worst = 0.0
    for b in ALL_BELL_STATES:
        psi = bell_vector(b)
        for alpha, beta in angles:
            oracle = parity_distribution(apply_rotations(psi, alpha, beta)).p_even
            closed = math.cos(theta_argument(b, alpha, beta)) ** 2
            worst = max(worst, abs(oracle - closed))
    return worst
