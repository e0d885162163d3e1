"""XOR game data model, validation and the game-spec JSON format.

A game is a list of question pairs ``(s, t)`` drawn with probability ``prob``;
the players win a round when the parity of their answer bits equals the
pair's ``target`` bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

NORMALIZATION_TOL = 1e-12


class XorGameError(ValueError):
    """Base class for malformed games and bad solver inputs."""


class ProbabilityNotNormalized(XorGameError):
    pass


class DuplicatePair(XorGameError):
    pass


class IndexOutOfRange(XorGameError):
    pass


class EmptyGame(XorGameError):
    pass


class SizeMismatch(XorGameError):
    pass


class SpecFormatError(XorGameError):
    """The game-spec file could not be parsed (bad JSON, missing field, bad type)."""


def parse_probability(value: Any) -> Fraction:
    """Turn a JSON probability (number or ``"p/q"`` string) into an exact fraction.

    Floats are converted exactly (binary rational), so ``float(result)``
    round-trips to the input.
    """
    if isinstance(value, bool):
        raise SpecFormatError(f"probability must be a number or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise SpecFormatError(f"probability must be finite, got {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecFormatError(f"cannot parse probability {value!r}") from exc
    raise SpecFormatError(f"probability must be a number or 'p/q' string, got {value!r}")


@dataclass(frozen=True)
class PairEntry:
    s: int
    t: int
    prob: float
    target: int
    # exact value of prob when authored as a fraction; used for exact classical values
    exact_prob: Fraction | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.exact_prob is None:
            object.__setattr__(self, "exact_prob", Fraction(self.prob))
        if self.target not in (0, 1):
            raise XorGameError(f"target of pair ({self.s},{self.t}) must be 0 or 1, got {self.target!r}")
        if not (0.0 < self.prob <= 1.0):
            raise ProbabilityNotNormalized(
                f"probability of pair ({self.s},{self.t}) must lie in (0, 1], got {self.prob!r}"
            )

    @classmethod
    def from_fraction(cls, s: int, t: int, prob: Fraction | int, target: int) -> "PairEntry":
        prob = Fraction(prob)
        return cls(s, t, float(prob), target, exact_prob=prob)


@dataclass(frozen=True)
class XorGame:
    """A 2-player XOR game: question sets ``range(n_alice)``, ``range(n_bob)`` and
    the pairs asked with positive probability."""

    name: str
    n_alice: int
    n_bob: int
    pairs: tuple[PairEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))

    @property
    def s_index(self) -> np.ndarray:
        return np.array([p.s for p in self.pairs], dtype=np.int64)

    @property
    def t_index(self) -> np.ndarray:
        return np.array([p.t for p in self.pairs], dtype=np.int64)

    @property
    def probs(self) -> np.ndarray:
        return np.array([p.prob for p in self.pairs], dtype=float)

    @property
    def targets(self) -> np.ndarray:
        return np.array([p.target for p in self.pairs], dtype=np.int64)

    @property
    def signs(self) -> np.ndarray:
        """``(-1)**target`` per pair: +1 wants even parity, -1 wants odd."""
        return 1.0 - 2.0 * self.targets

    def pair_lookup(self) -> dict[tuple[int, int], PairEntry]:
        return {(p.s, p.t): p for p in self.pairs}

    def to_dict(self) -> dict[str, Any]:
        out_pairs = []
        for p in self.pairs:
            exact = p.exact_prob
            if exact.denominator == 1:
                prob: Any = int(exact)
            elif exact.denominator < 10**6:
                prob = f"{exact.numerator}/{exact.denominator}"
            else:
                prob = p.prob
            out_pairs.append({"s": p.s, "t": p.t, "prob": prob, "target": p.target})
        return {"name": self.name, "n_alice": self.n_alice, "n_bob": self.n_bob, "pairs": out_pairs}

    @classmethod
    def from_dict(cls, data: Any) -> "XorGame":
        """Build and validate a game from the decoded game-spec JSON object."""
        if not isinstance(data, dict):
            raise SpecFormatError("game spec must be a JSON object")
        for key in ("name", "n_alice", "n_bob", "pairs"):
            if key not in data:
                raise SpecFormatError(f"missing field {key!r}")
        if not isinstance(data["name"], str):
            raise SpecFormatError("field 'name' must be a string")
        for key in ("n_alice", "n_bob"):
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise SpecFormatError(f"field {key!r} must be an integer")
        if not isinstance(data["pairs"], list):
            raise SpecFormatError("field 'pairs' must be an array")
        pairs = []
        for i, raw in enumerate(data["pairs"]):
            if not isinstance(raw, dict):
                raise SpecFormatError(f"pairs[{i}] must be an object")
            for key in ("s", "t", "prob", "target"):
                if key not in raw:
                    raise SpecFormatError(f"pairs[{i}] is missing field {key!r}")
            for key in ("s", "t", "target"):
                if not isinstance(raw[key], int) or isinstance(raw[key], bool):
                    raise SpecFormatError(f"pairs[{i}].{key} must be an integer")
            try:
                prob = parse_probability(raw["prob"])
            except SpecFormatError as exc:
                raise SpecFormatError(f"pairs[{i}].prob: {exc}") from exc
            try:
                pairs.append(PairEntry.from_fraction(raw["s"], raw["t"], prob, raw["target"]))
            except XorGameError as exc:
                raise type(exc)(f"pairs[{i}]: {exc}") from exc
        game = cls(data["name"], data["n_alice"], data["n_bob"], tuple(pairs))
        validate(game)
        return game


def validate(game: XorGame) -> None:
    """Raise an :class:`XorGameError` subclass unless ``game`` is well formed."""
    if game.n_alice < 1 or game.n_bob < 1 or not game.pairs:
        raise EmptyGame(f"game {game.name!r} needs at least one question per player and one pair")
    seen = set()
    for p in game.pairs:
        if not (0 <= p.s < game.n_alice and 0 <= p.t < game.n_bob):
            raise IndexOutOfRange(
                f"pair ({p.s},{p.t}) outside question sets of size {game.n_alice}x{game.n_bob}"
            )
        if (p.s, p.t) in seen:
            raise DuplicatePair(f"pair ({p.s},{p.t}) listed twice")
        seen.add((p.s, p.t))
        if p.target not in (0, 1):
            raise XorGameError(f"pair ({p.s},{p.t}) has target {p.target!r}")
        if not (0.0 < p.prob <= 1.0):
            raise ProbabilityNotNormalized(f"pair ({p.s},{p.t}) has probability {p.prob!r}")
    total = math.fsum(p.prob for p in game.pairs)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ProbabilityNotNormalized(f"pair probabilities sum to {total!r}, not 1")


def random_answer_value(game: XorGame) -> float:
    """Best win probability when the answer parity ignores the questions."""
    validate(game)
    even = math.fsum(p.prob for p in game.pairs if p.target == 0)
    return max(even, 1.0 - even)


def load_game(path: str | Path) -> XorGame:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return XorGame.from_dict(data)


def dump_game(game: XorGame) -> str:
    return json.dumps(game.to_dict(), indent=2)
