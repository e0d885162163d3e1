"""Strategy files, angle notation and stable JSON output."""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .classical import DeterministicStrategy
from .game_model import SpecFormatError
from .kernel import BellState
from .quantum import QuantumStrategy

_ANGLE_RE = re.compile(
    r"^(?P<sign>[+-]?)\s*(?P<coef>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*(?P<pi>π|pi)?\s*"
    r"(?:/\s*(?P<den>\d+(?:\.\d*)?))?$",
    re.IGNORECASE,
)
PRETTY_DENOM = 48
PRETTY_TOL = 1e-9


def parse_angle(value: Any) -> float:
    """Angle in radians from a number or a string such as ``"π/3"``,
    ``"-3pi/16"``, ``"2*pi/3"`` or ``"0.25"``."""
    if isinstance(value, bool):
        raise SpecFormatError(f"bad angle {value!r}")
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise SpecFormatError(f"angle must be finite, got {value!r}")
        return float(value)
    if not isinstance(value, str):
        raise SpecFormatError(f"bad angle {value!r}")
    text = value.strip().replace("−", "-")
    m = _ANGLE_RE.match(text)
    if not m or (m.group("coef") is None and m.group("pi") is None):
        raise SpecFormatError(f"cannot parse angle {value!r}")
    coef = float(m.group("coef")) if m.group("coef") else 1.0
    if m.group("pi"):
        coef *= math.pi
    if m.group("den"):
        den = float(m.group("den"))
        if den == 0:
            raise SpecFormatError(f"zero denominator in angle {value!r}")
        coef /= den
    return -coef if m.group("sign") == "-" else coef


def pretty_angle(x: float) -> str | None:
    """Render ``x`` as a multiple of ``π/48`` (reduced) when it is one to 1e-9."""
    k = round(x * PRETTY_DENOM / math.pi)
    if abs(x - k * math.pi / PRETTY_DENOM) > PRETTY_TOL:
        return None
    frac = Fraction(k, PRETTY_DENOM)
    if frac == 0:
        return "0"
    sign = "-" if frac < 0 else ""
    num, den = abs(frac.numerator), frac.denominator
    head = "π" if num == 1 else f"{num}π"
    return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"


def strategy_from_dict(data: Any) -> DeterministicStrategy | QuantumStrategy:
    if not isinstance(data, dict) or "type" not in data:
        raise SpecFormatError("strategy must be an object with a 'type' field")
    kind = data["type"]
    try:
        if kind == "classical":
            return DeterministicStrategy(tuple(data["f"]), tuple(data["g"]))
        if kind == "quantum":
            bell = BellState.parse(str(data["bell"]))
            alpha = tuple(parse_angle(a) for a in data["alpha"])
            beta = tuple(parse_angle(b) for b in data["beta"])
            return QuantumStrategy(bell, alpha, beta)
    except KeyError as exc:
        raise SpecFormatError(f"strategy is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecFormatError):
            raise
        raise SpecFormatError(f"bad strategy: {exc}") from exc
    raise SpecFormatError(f"unknown strategy type {kind!r}")


def strategy_to_dict(strat: DeterministicStrategy | QuantumStrategy) -> dict:
    if isinstance(strat, DeterministicStrategy):
        return {"type": "classical", "f": list(strat.f), "g": list(strat.g)}
    return {
        "type": "quantum",
        "bell": strat.bell.label,
        "alpha": list(strat.alpha),
        "beta": list(strat.beta),
    }


def load_strategy(path: str | Path) -> DeterministicStrategy | QuantumStrategy:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return strategy_from_dict(data)


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize {x!r}")
    return format(x, ".17g")


def dumps_stable(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with insertion-ordered keys and every float at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(int(obj))
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {dumps_stable(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in obj):
            return "[" + ", ".join(dumps_stable(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps_stable(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalars
        return dumps_stable(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
