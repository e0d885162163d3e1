"""Round-by-round simulation of XOR games under classical or quantum strategies.

Rounds are processed in fixed blocks; block ``k`` draws from its own Philox
stream keyed by ``(seed, k)``, so reports do not depend on how blocks are
spread over threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classical import DeterministicStrategy
from .classical import check_strategy_size as _check_classical
from .game_model import XorGame, validate
from .kernel import apply_rotations, bell_vector, joint_outcome_probs
from .quantum import QuantumStrategy
from .quantum import check_strategy_size as _check_quantum

BLOCK_ROUNDS = 1 << 16


@dataclass(frozen=True)
class SimulationReport:
    rounds: int
    wins: int
    win_rate: float
    stderr: float
    seed: int
    # counts[s, t, a, b]: rounds asked (s, t) that were answered (a, b)
    counts: np.ndarray

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "wins": self.wins,
            "win_rate": self.win_rate,
            "stderr": self.stderr,
            "seed": self.seed,
        }


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _run(game: XorGame, outcome_cdf: np.ndarray, rounds: int, seed: int, threads: int) -> SimulationReport:
    """Simulate with a per-pair cumulative distribution over answers ``2a + b``."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    pair_cdf = np.cumsum(game.probs)
    n_pairs = len(game.pairs)

    def block(k: int) -> np.ndarray:
        size = min(BLOCK_ROUNDS, rounds - k * BLOCK_ROUNDS)
        u = _block_rng(seed, k).random((size, 2))
        pair = np.minimum(np.searchsorted(pair_cdf, u[:, 0], side="right"), n_pairs - 1)
        answer = (u[:, 1:2] >= outcome_cdf[pair, :3]).sum(axis=1)
        return np.bincount(pair * 4 + answer, minlength=n_pairs * 4)

    n_blocks = -(-rounds // BLOCK_ROUNDS)
    if threads > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tallies = list(pool.map(block, range(n_blocks)))
    else:
        tallies = [block(k) for k in range(n_blocks)]
    per_pair = np.sum(tallies, axis=0).reshape(n_pairs, 2, 2)

    counts = np.zeros((game.n_alice, game.n_bob, 2, 2), dtype=np.int64)
    wins = 0
    for i, p in enumerate(game.pairs):
        counts[p.s, p.t] = per_pair[i]
        wins += int(per_pair[i, 0, 0] + per_pair[i, 1, 1]) if p.target == 0 else int(
            per_pair[i, 0, 1] + per_pair[i, 1, 0]
        )
    rate = wins / rounds
    return SimulationReport(rounds, wins, rate, math.sqrt(rate * (1 - rate) / rounds), seed, counts)


def simulate_classical(
    game: XorGame, strat: DeterministicStrategy, rounds: int, seed: int, threads: int = 1
) -> SimulationReport:
    validate(game)
    _check_classical(game, strat)
    cdf = np.zeros((len(game.pairs), 4))
    for i, p in enumerate(game.pairs):
        answer = 2 * strat.f[p.s] + strat.g[p.t]
        cdf[i, answer:] = 1.0
    return _run(game, cdf, rounds, seed, threads)


def simulate_quantum(
    game: XorGame, strat: QuantumStrategy, rounds: int, seed: int, threads: int = 1
) -> SimulationReport:
    """Each round the referee samples ``(s, t)``, the players rotate the shared
    Bell pair by ``alpha[s]`` and ``beta[t]``, and the joint outcome is drawn
    from the state oracle's computational-basis probabilities."""
    validate(game)
    _check_quantum(game, strat)
    psi = bell_vector(strat.bell)
    cdf = np.empty((len(game.pairs), 4))
    for i, p in enumerate(game.pairs):
        probs = joint_outcome_probs(apply_rotations(psi, strat.alpha[p.s], strat.beta[p.t]))
        cdf[i] = np.cumsum(probs.ravel())
    return _run(game, cdf, rounds, seed, threads)


def marginal_deviation(report: SimulationReport) -> float:
    """Largest standardized gap between a player's answer frequency for one
    question pair and that player's pooled frequency for the same question.

    Under no-signaling each player's answer distribution does not depend on
    the other player's question, so the gaps should be a few standard errors
    at most.
    """
    counts = report.counts
    worst = 0.0
    # Alice: a-marginal for fixed s across t; Bob: b-marginal for fixed t across s
    for n_zero, n_total in (
        (counts[:, :, 0, :].sum(axis=2), counts.sum(axis=(2, 3))),
        (counts[:, :, :, 0].sum(axis=2).T, counts.sum(axis=(2, 3)).T),
    ):
        for q in range(n_total.shape[0]):
            asked = n_total[q] > 0
            if not asked.any():
                continue
            pooled = n_zero[q][asked].sum() / n_total[q][asked].sum()
            freq = n_zero[q][asked] / n_total[q][asked]
            if pooled in (0.0, 1.0):
                if np.any(freq != pooled):
                    return math.inf
                continue
            se = np.sqrt(pooled * (1 - pooled) / n_total[q][asked])
            worst = max(worst, float(np.max(np.abs(freq - pooled) / se)))
    return worst
