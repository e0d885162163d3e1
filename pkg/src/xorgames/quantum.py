"""Single-ebit quantum value of XOR games.

Strategies share one Bell state; Alice rotates her qubit by ``alpha[s]``, Bob
by ``beta[t]``, and both measure in the computational basis. For question
pair ``(s, t)`` the answers have even parity with probability ``cos(theta)**2``
where ``theta`` is an affine function of ``alpha[s]`` and ``beta[t]`` fixed by
the Bell state (see :func:`xorgames.kernel.theta_argument`). The win
probability is therefore

    W = sum_pairs prob * (1 + (-1)**target * cos(2*theta)) / 2

and the value reported here is its maximum found by multi-start gradient
ascent. It is a lower bound certified by an explicit witness; it equals the
entangled value only when one ebit is enough for the game.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .game_model import SizeMismatch, XorGame, validate
from .kernel import ALL_BELL_STATES, THETA_COEFFS, BellState

VALUE_LABEL = "quantum value (single-ebit ansatz)"


@dataclass(frozen=True)
class QuantumStrategy:
    bell: BellState
    alpha: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        if not all(math.isfinite(a) for a in self.alpha + self.beta):
            raise ValueError("angles must be finite")

    def canonical(self) -> "QuantumStrategy":
        """Gauge-fix ``alpha[0] = 0`` and reduce every angle to ``[0, pi)``.

        Shifting every alpha by ``c`` and every beta by ``-sign_alpha*c``
        (``sign_alpha`` the Bell state's alpha coefficient) leaves all thetas
        unchanged; shifting one angle by pi changes no ``cos**2``.
        """
        ca = THETA_COEFFS[self.bell][0]
        c = -self.alpha[0] if self.alpha else 0.0
        alpha = [_mod_pi(a + c) for a in self.alpha]
        beta = [_mod_pi(b - ca * c) for b in self.beta]
        if alpha:
            alpha[0] = 0.0
        return QuantumStrategy(self.bell, tuple(alpha), tuple(beta))


def _mod_pi(x: float) -> float:
    r = math.fmod(x, math.pi)
    if r < 0:
        r += math.pi
    if r >= math.pi:
        r = 0.0
    return r


@dataclass
class SolverConfig:
    starts: int = 64
    seed: int = 0
    bell: BellState | None = None
    tol: float = 1e-12
    max_iter: int = 10_000
    value_tol: float = 1e-9


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    witness: QuantumStrategy
    starts_run: int
    best_gradient_norm: float
    converged: bool
    iterations: int = 0
    per_bell: dict = field(default_factory=dict)


def check_strategy_size(game: XorGame, strat: QuantumStrategy) -> None:
    if len(strat.alpha) != game.n_alice or len(strat.beta) != game.n_bob:
        raise SizeMismatch(
            f"angle tables have sizes ({len(strat.alpha)}, {len(strat.beta)}), "
            f"game {game.name!r} needs ({game.n_alice}, {game.n_bob})"
        )


def _thetas(game: XorGame, strat: QuantumStrategy) -> np.ndarray:
    ca, cb, off = THETA_COEFFS[strat.bell]
    alpha = np.asarray(strat.alpha)
    beta = np.asarray(strat.beta)
    return off + ca * alpha[game.s_index] + cb * beta[game.t_index]


def objective(game: XorGame, strat: QuantumStrategy) -> float:
    """Win probability of ``strat`` on ``game``."""
    check_strategy_size(game, strat)
    theta = _thetas(game, strat)
    terms = game.probs * (1.0 + game.signs * np.cos(2.0 * theta)) / 2.0
    return math.fsum(terms.tolist())


def gradient(game: XorGame, strat: QuantumStrategy) -> tuple[np.ndarray, np.ndarray]:
    """Partial derivatives of :func:`objective` with respect to each alpha and beta."""
    check_strategy_size(game, strat)
    ca, cb, _ = THETA_COEFFS[strat.bell]
    theta = _thetas(game, strat)
    dtheta = -game.probs * game.signs * np.sin(2.0 * theta)
    d_alpha = ca * np.bincount(game.s_index, weights=dtheta, minlength=game.n_alice)
    d_beta = cb * np.bincount(game.t_index, weights=dtheta, minlength=game.n_bob)
    return d_alpha, d_beta


class _BatchProblem:
    """Objective and gradient evaluated for many (Bell state, start point) rows at once."""

    def __init__(self, game: XorGame, bells: list[BellState]):
        self.n_alice = game.n_alice
        n_pairs = len(game.pairs)
        self.probs = game.probs
        self.signs = game.signs
        coeffs = np.array([THETA_COEFFS[b] for b in bells])
        self.ca = coeffs[:, 0:1]
        self.cb = coeffs[:, 1:2]
        self.off = coeffs[:, 2:3]
        # pair -> question incidence matrices
        self.sel_a = np.zeros((n_pairs, game.n_alice))
        self.sel_a[np.arange(n_pairs), game.s_index] = 1.0
        self.sel_b = np.zeros((n_pairs, game.n_bob))
        self.sel_b[np.arange(n_pairs), game.t_index] = 1.0

    def theta_shift(self, x: np.ndarray, rows) -> np.ndarray:
        """Change in theta per pair caused by angle displacement ``x`` (no offset)."""
        a = x[:, : self.n_alice] @ self.sel_a.T
        b = x[:, self.n_alice :] @ self.sel_b.T
        return self.ca[rows] * a + self.cb[rows] * b

    def theta(self, x: np.ndarray, rows) -> np.ndarray:
        return self.off[rows] + self.theta_shift(x, rows)

    def grad(self, theta: np.ndarray, rows) -> np.ndarray:
        dtheta = -self.probs * self.signs * np.sin(2.0 * theta)
        ga = self.ca[rows] * (dtheta @ self.sel_a)
        gb = self.cb[rows] * (dtheta @ self.sel_b)
        return np.hstack([ga, gb])

    def increase(self, theta: np.ndarray, step_theta: np.ndarray) -> np.ndarray:
        """``value(theta + step) - value(theta)`` without cancellation.

        Uses ``cos 2u - cos 2v = -2 sin(u+v) sin(u-v)``.
        """
        delta = -np.sin(2.0 * theta + step_theta) * np.sin(step_theta)
        return (self.probs * self.signs * delta).sum(axis=1)


def _ascend(problem: _BatchProblem, x0: np.ndarray, tol: float, max_iter: int):
    """Gradient ascent with Armijo backtracking, all rows in lockstep."""
    n_rows = x0.shape[0]
    rows_all = np.arange(n_rows)
    x = x0.copy()
    step = np.ones(n_rows)
    iters = np.zeros(n_rows, dtype=int)
    theta = problem.theta(x, rows_all)
    g = problem.grad(theta, rows_all)
    gnorm = np.linalg.norm(g, axis=1)
    stalled = np.zeros(n_rows, dtype=bool)
    # c = 0.4 rejects steps that overshoot the optimum along a curved direction
    armijo = 0.4

    for _ in range(max_iter):
        active = np.flatnonzero((gnorm >= tol) & ~stalled)
        if active.size == 0:
            break
        pending = active
        while pending.size:
            d = step[pending, None] * g[pending]
            shift = problem.theta_shift(d, pending)
            gain = problem.increase(theta[pending], shift)
            ok = gain >= armijo * step[pending] * gnorm[pending] ** 2
            accepted = pending[ok]
            x[accepted] += d[ok]
            rejected = pending[~ok]
            step[rejected] *= 0.5
            # steps below angle resolution cannot make progress
            tiny = step[rejected] * gnorm[rejected] < 1e-18
            stalled[rejected[tiny]] = True
            pending = rejected[~tiny]
        moved = active[~stalled[active]]
        iters[moved] += 1
        theta[moved] = problem.theta(x[moved], moved)
        g[moved] = problem.grad(theta[moved], moved)
        gnorm[moved] = np.linalg.norm(g[moved], axis=1)
        step[moved] = np.minimum(step[moved] * 2.0, 64.0)

    return x, gnorm, iters


def quantum_value(game: XorGame, config: SolverConfig | None = None) -> OptimizationResult:
    """Maximize the single-ebit win probability over Bell state and angles.

    Start points are uniform in ``[0, pi)`` per angle, drawn for all four Bell
    states from ``config.seed`` so that pinning a Bell state reuses exactly
    the starts it would get in the all-states run.
    """
    config = config or SolverConfig()
    validate(game)
    if config.starts < 1:
        raise ValueError("need at least one start")
    dim = game.n_alice + game.n_bob
    rng = np.random.default_rng(config.seed)
    all_starts = rng.uniform(0.0, math.pi, size=(len(ALL_BELL_STATES), config.starts, dim))

    bells = [config.bell] if config.bell is not None else list(ALL_BELL_STATES)
    row_bells = [b for b in bells for _ in range(config.starts)]
    x0 = np.concatenate([all_starts[ALL_BELL_STATES.index(b)] for b in bells])

    problem = _BatchProblem(game, row_bells)
    x, gnorm, iters = _ascend(problem, x0, config.tol, config.max_iter)

    candidates = []
    for i, b in enumerate(row_bells):
        strat = QuantumStrategy(b, tuple(x[i, : game.n_alice]), tuple(x[i, game.n_alice :])).canonical()
        candidates.append((objective(game, strat), strat, float(gnorm[i]), int(iters[i])))

    any_converged = any(c[2] < config.tol for c in candidates)
    pool = [c for c in candidates if c[2] < config.tol] if any_converged else candidates
    best_value = max(c[0] for c in pool)
    tied = [c for c in pool if c[0] >= best_value - config.value_tol]
    value, witness, grad_norm, n_iter = min(
        tied, key=lambda c: (c[1].alpha + c[1].beta, ALL_BELL_STATES.index(c[1].bell))
    )
    per_bell = {b: max(c[0] for c in candidates if c[1].bell is b) for b in bells}
    return OptimizationResult(
        value=value,
        witness=witness,
        starts_run=len(candidates),
        best_gradient_norm=grad_norm,
        converged=any_converged,
        iterations=n_iter,
        per_bell=per_bell,
    )


def odd_cycle_closed_form(n: int) -> float:
    """``cos(pi/(4n))**2``, the single-ebit value of the odd n-cycle game."""
    from .catalog import check_odd_cycle_size

    check_odd_cycle_size(n)
    return math.cos(math.pi / (4 * n)) ** 2


def odd_cycle_witness(n: int) -> QuantumStrategy:
    """Optimal shared-``phi+`` strategy for the odd n-cycle game.

    Bob turns ``phi_n = (pi/2)(1 - 1/n)`` backwards per vertex,
    ``beta(t) = -phi_n t``, and Alice sits ``pi/(4n)`` off Bob's same-vertex
    orientation, ``alpha(s) = -phi_n s + pi/(4n)``. Every pair then wins with
    probability ``cos(pi/(4n))**2``, including the wrap-around pair.
    """
    from .catalog import check_odd_cycle_size

    check_odd_cycle_size(n)
    offset = math.pi / 2 * (1 - 1 / n)
    alpha = tuple(-offset * s + math.pi / (4 * n) for s in range(n))
    beta = tuple(-offset * t for t in range(n))
    return QuantumStrategy(BellState.PHI_PLUS, alpha, beta)
