"""Constructors for the CHSH, odd-cycle and EAOS games.

Questions are 0-indexed; vertices/paths numbered from 1 elsewhere map to ``index + 1``.
"""

from __future__ import annotations

from fractions import Fraction

from .game_model import PairEntry, XorGame, XorGameError, validate


class EvenOrTooSmallN(XorGameError):
    pass


def check_odd_cycle_size(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise EvenOrTooSmallN(f"odd-cycle size must be an odd integer >= 3, got {n!r}")


def make_chsh() -> XorGame:
    """Win iff ``a xor b == s*t``; all four question pairs equally likely."""
    pairs = [PairEntry.from_fraction(s, t, Fraction(1, 4), s * t) for s in (0, 1) for t in (0, 1)]
    game = XorGame("chsh", 2, 2, tuple(pairs))
    validate(game)
    return game


def make_odd_cycle(n: int) -> XorGame:
    """Odd n-cycle game.

    Bob is asked either Alice's vertex (answers must agree) or the vertex
    clockwise after it (answers must differ). Each of the ``2n`` allowed
    pairs has probability ``1/(2n)``.
    """
    check_odd_cycle_size(n)
    prob = Fraction(1, 2 * n)
    pairs = []
    for s in range(n):
        pairs.append(PairEntry.from_fraction(s, s, prob, 0))
        pairs.append(PairEntry.from_fraction(s, (s + 1) % n, prob, 1))
    game = XorGame(f"odd-cycle-{n}", n, n, tuple(pairs))
    validate(game)
    return game


def make_eaos() -> XorGame:
    """Entanglement-assisted orientation in space: 3 paths per player, uniform
    over all 9 ordered pairs; same path needs equal ways, different paths
    need opposite ways."""
    prob = Fraction(1, 9)
    pairs = [PairEntry.from_fraction(s, t, prob, int(s != t)) for s in range(3) for t in range(3)]
    game = XorGame("eaos", 3, 3, tuple(pairs))
    validate(game)
    return game
