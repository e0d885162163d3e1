"""Classical value of an XOR game by exhaustive enumeration of deterministic strategies."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .game_model import SizeMismatch, XorGame, XorGameError, validate

DEFAULT_MAX_BITS = 30
TIE_TOL = 1e-12
_CHUNK = 1 << 18


class GameTooLargeForEnumeration(XorGameError):
    pass


class WeightsNotNormalized(XorGameError):
    pass


@dataclass(frozen=True)
class DeterministicStrategy:
    """Answer tables: Alice answers ``f[s]`` to question ``s``, Bob ``g[t]`` to ``t``."""

    f: tuple[int, ...]
    g: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(b) for b in self.f))
        object.__setattr__(self, "g", tuple(int(b) for b in self.g))
        if any(b not in (0, 1) for b in self.f + self.g):
            raise XorGameError("answer tables must contain only bits 0/1")

    @classmethod
    def from_index(cls, index: int, n_alice: int, n_bob: int) -> "DeterministicStrategy":
        """Decode a joint strategy index: low ``n_alice`` bits are f, the rest g,
        question 0 in the least significant bit of each."""
        f = tuple((index >> s) & 1 for s in range(n_alice))
        g = tuple((index >> (n_alice + t)) & 1 for t in range(n_bob))
        return cls(f, g)

    def flipped(self) -> "DeterministicStrategy":
        return DeterministicStrategy(tuple(1 - b for b in self.f), tuple(1 - b for b in self.g))


@dataclass(frozen=True)
class ClassicalResult:
    value: float
    witness: DeterministicStrategy
    strategies_enumerated: int
    exact_value: Fraction


def check_strategy_size(game: XorGame, strat: DeterministicStrategy) -> None:
    if len(strat.f) != game.n_alice or len(strat.g) != game.n_bob:
        raise SizeMismatch(
            f"strategy tables have sizes ({len(strat.f)}, {len(strat.g)}), "
            f"game {game.name!r} needs ({game.n_alice}, {game.n_bob})"
        )


def evaluate_deterministic(game: XorGame, strat: DeterministicStrategy) -> float:
    """Win probability of a deterministic strategy."""
    check_strategy_size(game, strat)
    return math.fsum(p.prob for p in game.pairs if strat.f[p.s] ^ strat.g[p.t] == p.target)


def evaluate_deterministic_exact(game: XorGame, strat: DeterministicStrategy) -> Fraction:
    check_strategy_size(game, strat)
    return sum(
        (p.exact_prob for p in game.pairs if strat.f[p.s] ^ strat.g[p.t] == p.target),
        Fraction(0),
    )


def mixed_strategy_value(
    game: XorGame, strategies: Sequence[DeterministicStrategy], weights: Sequence[float]
) -> float:
    """Win probability of a probabilistic mixture of deterministic strategies."""
    weights = [float(w) for w in weights]
    if len(weights) != len(strategies) or not strategies:
        raise WeightsNotNormalized("need exactly one weight per strategy and at least one strategy")
    if any(w < 0 or not math.isfinite(w) for w in weights):
        raise WeightsNotNormalized("weights must be finite and nonnegative")
    if abs(math.fsum(weights) - 1.0) > TIE_TOL:
        raise WeightsNotNormalized(f"weights sum to {math.fsum(weights)!r}, not 1")
    return math.fsum(w * evaluate_deterministic(game, s) for s, w in zip(strategies, weights))


def _integer_weights(game: XorGame) -> tuple[np.ndarray, int] | None:
    """Per-pair weights scaled to integers by a common denominator, when that
    denominator is small enough for exact int64 sums."""
    denom = 1
    for p in game.pairs:
        denom = math.lcm(denom, p.exact_prob.denominator)
        if denom > 2**52:
            return None
    weights = [p.exact_prob * denom for p in game.pairs]
    if any(w.denominator != 1 for w in weights):
        return None
    return np.array([int(w) for w in weights], dtype=np.int64), denom


def _scan_range(lo, hi, n_alice, n_bob, s_idx, t_idx, targets, weights, tol):
    """Best value in the strategy index range [lo, hi) and the smallest (f, g)
    key among strategies within ``tol`` of it."""
    idx = np.arange(lo, hi, dtype=np.int64)
    f = idx & ((1 << n_alice) - 1)
    g = idx >> n_alice
    acc = np.zeros(hi - lo, dtype=weights.dtype)
    for s, t, target, w in zip(s_idx, t_idx, targets, weights):
        win = (((f >> s) ^ (g >> t)) & 1) == target
        acc += np.where(win, w, 0)
    best = acc.max()
    cand = np.flatnonzero(acc >= best - tol)
    # lexicographic (f, g): f in the high bits of the key
    keys = (f[cand] << n_bob) | g[cand]
    j = cand[int(np.argmin(keys))]
    return best.item(), (int(f[j]), int(g[j]))


def classical_value(
    game: XorGame, max_bits: int = DEFAULT_MAX_BITS, threads: int = 1
) -> ClassicalResult:
    """Exact classical (Bell) value by enumerating all ``2**(n_alice+n_bob)`` strategies.

    The witness is the maximizer with the smallest ``(f, g)`` key, each table
    read as an integer with question 0 as the least significant bit.
    """
    validate(game)
    n_bits = game.n_alice + game.n_bob
    if n_bits > max_bits:
        raise GameTooLargeForEnumeration(
            f"{n_bits} question bits exceed the enumeration cap of {max_bits}"
        )
    total = 1 << n_bits
    integer = _integer_weights(game)
    if integer is not None:
        weights, denom = integer
        tol = 0
    else:
        weights, denom = game.probs, None
        tol = TIE_TOL

    args = (game.n_alice, game.n_bob, game.s_index, game.t_index, game.targets, weights, tol)
    ranges = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    if threads > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partial = list(pool.map(lambda r: _scan_range(*r, *args), ranges))
    else:
        partial = [_scan_range(*r, *args) for r in ranges]

    best = max(v for v, _ in partial)
    key = min(k for v, k in partial if v >= best - tol)
    f_int, g_int = key
    witness = DeterministicStrategy.from_index(f_int | (g_int << game.n_alice), game.n_alice, game.n_bob)
    exact = evaluate_deterministic_exact(game, witness)
    value = float(Fraction(best, denom)) if denom is not None else evaluate_deterministic(game, witness)
    return ClassicalResult(value, witness, total, exact)
