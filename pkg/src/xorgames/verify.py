"""Reference values for the catalog games, recomputed and compared."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .catalog import make_chsh, make_eaos, make_odd_cycle
from .classical import classical_value
from .kernel import BellState, kernel_agreement
from .montecarlo import marginal_deviation, simulate_quantum
from .quantum import QuantumStrategy, SolverConfig, objective, odd_cycle_witness, quantum_value

ODD_CYCLE_SIZES = (3, 5, 7, 9)
MC_ROUNDS = 10**6


@dataclass(frozen=True)
class CheckRow:
    name: str
    expected: str
    computed: str
    tolerance: str
    passed: bool
    seconds: float


def chsh_reference_witness() -> QuantumStrategy:
    """Shared ``phi-``, ``alpha(s) = beta(s) = (4pi/16) s - pi/16``."""
    angles = tuple(4 * math.pi / 16 * s - math.pi / 16 for s in range(2))
    return QuantumStrategy(BellState.PHI_MINUS, angles, angles)


def eaos_reference_witness() -> QuantumStrategy:
    """Shared ``phi+``, ``alpha(s) = beta(s) = (pi/3) s - pi/3``."""
    angles = tuple(math.pi / 3 * s - math.pi / 3 for s in range(3))
    return QuantumStrategy(BellState.PHI_PLUS, angles, angles)


def _timed(fn: Callable):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _exact_row(name, expected: Fraction, fn) -> CheckRow:
    result, dt = _timed(fn)
    return CheckRow(name, str(expected), str(result.exact_value), "exact", result.exact_value == expected, dt)


def _close_row(name, expected: float, fn, tol: float) -> CheckRow:
    value, dt = _timed(fn)
    return CheckRow(
        name, format(expected, ".12f"), format(value, ".12f"), f"{tol:g}", abs(value - expected) <= tol, dt
    )


def _mc_row(name, game, strat, expected: float, rounds: int, seed: int, threads: int) -> CheckRow:
    rep, dt = _timed(lambda: simulate_quantum(game, strat, rounds, seed, threads))
    z = abs(rep.win_rate - expected) / rep.stderr
    drift = marginal_deviation(rep)
    return CheckRow(
        name,
        format(expected, ".6f"),
        f"{rep.win_rate:.6f} (z={z:.2f}, marginal z={drift:.2f})",
        "4 se; marginals 5 se",
        z <= 4 and drift <= 5,
        dt,
    )


def run_checks(starts: int = 64, seed: int = 0, quick: bool = False, threads: int = 1) -> list[CheckRow]:
    config = SolverConfig(starts=starts, seed=seed)
    chsh, eaos = make_chsh(), make_eaos()
    rows = [
        _exact_row("classical CHSH", Fraction(3, 4), lambda: classical_value(chsh)),
        _close_row("quantum CHSH", math.cos(math.pi / 8) ** 2, lambda: quantum_value(chsh, config).value, 1e-9),
        _close_row(
            "CHSH reference witness",
            math.cos(math.pi / 8) ** 2,
            lambda: objective(chsh, chsh_reference_witness()),
            1e-9,
        ),
    ]
    for n in ODD_CYCLE_SIZES:
        game = make_odd_cycle(n)
        rows.append(
            _exact_row(f"classical odd cycle n={n}", 1 - Fraction(1, 2 * n), lambda g=game: classical_value(g, threads=threads))
        )
    for n in ODD_CYCLE_SIZES:
        game = make_odd_cycle(n)
        target = math.cos(math.pi / (4 * n)) ** 2
        rows.append(_close_row(f"quantum odd cycle n={n}", target, lambda g=game: quantum_value(g, config).value, 1e-6))
        rows.append(
            _close_row(f"odd cycle witness n={n}", target, lambda g=game, n=n: objective(g, odd_cycle_witness(n)), 1e-12)
        )
    rows += [
        _exact_row("classical EAOS", Fraction(7, 9), lambda: classical_value(eaos)),
        _close_row("quantum EAOS", 5 / 6, lambda: quantum_value(eaos, config).value, 1e-9),
        _close_row("EAOS reference witness", 5 / 6, lambda: objective(eaos, eaos_reference_witness()), 1e-9),
        _close_row("state oracle vs closed form (max dev)", 0.0, lambda: kernel_agreement(1000, seed), 1e-12),
    ]
    if not quick:
        rows.append(
            _mc_row("Monte Carlo CHSH", chsh, chsh_reference_witness(), math.cos(math.pi / 8) ** 2, MC_ROUNDS, seed, threads)
        )
        rows.append(_mc_row("Monte Carlo EAOS", eaos, eaos_reference_witness(), 5 / 6, MC_ROUNDS, seed, threads))
    return rows
