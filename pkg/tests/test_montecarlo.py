import math

import numpy as np
import pytest

import xorgames.montecarlo as mc
from xorgames import (
    BellState,
    DeterministicStrategy,
    PairEntry,
    QuantumStrategy,
    XorGame,
    make_chsh,
    make_eaos,
    objective,
    simulate_classical,
    simulate_quantum,
)
from xorgames.montecarlo import SimulationReport, marginal_deviation
from xorgames.verify import chsh_reference_witness, eaos_reference_witness

COS2_PI_8 = math.cos(math.pi / 8) ** 2


def within(report, expected, k=4.0):
    return abs(report.win_rate - expected) <= k * report.stderr


def test_chsh_all_zeros():
    rep = simulate_classical(make_chsh(), DeterministicStrategy((0, 0), (0, 0)), 10**6, seed=1)
    assert rep.rounds == 10**6
    assert rep.win_rate == rep.wins / rep.rounds
    assert rep.stderr == pytest.approx(math.sqrt(rep.win_rate * (1 - rep.win_rate) / 10**6))
    assert within(rep, 0.75)


def test_eaos_shared_mapping():
    rep = simulate_classical(make_eaos(), DeterministicStrategy((0, 1, 1), (0, 1, 1)), 10**6, seed=2)
    assert within(rep, 7 / 9)


def test_always_win_classical():
    game = XorGame("one", 1, 1, (PairEntry(0, 0, 1.0, 0),))
    rep = simulate_classical(game, DeterministicStrategy((1,), (1,)), 1000, seed=0)
    assert rep.wins == 1000 and rep.win_rate == 1.0 and rep.stderr == 0.0


def test_always_win_quantum():
    game = XorGame("even", 2, 1, (PairEntry(0, 0, 0.5, 0), PairEntry(1, 0, 0.5, 0)))
    strat = QuantumStrategy(BellState.PHI_PLUS, (0.0, 0.0), (0.0,))
    rep = simulate_quantum(game, strat, 5000, seed=4)
    assert rep.win_rate == 1.0


def test_chsh_quantum_witness():
    rep = simulate_quantum(make_chsh(), chsh_reference_witness(), 10**6, seed=0)
    assert within(rep, COS2_PI_8)
    assert marginal_deviation(rep) <= 5


def test_eaos_quantum_witness():
    rep = simulate_quantum(make_eaos(), eaos_reference_witness(), 10**6, seed=0)
    assert within(rep, 5 / 6)
    assert marginal_deviation(rep) <= 5


def test_pair_frequencies_follow_distribution():
    game = XorGame(
        "skewed", 1, 3, (PairEntry(0, 0, 0.1, 0), PairEntry(0, 1, 0.3, 0), PairEntry(0, 2, 0.6, 1))
    )
    rep = simulate_classical(game, DeterministicStrategy((0,), (0, 0, 0)), 200_000, seed=9)
    freq = rep.counts.sum(axis=(2, 3))[0] / rep.rounds
    se = np.sqrt(np.array([0.1, 0.3, 0.6]) * np.array([0.9, 0.7, 0.4]) / rep.rounds)
    assert np.all(np.abs(freq - [0.1, 0.3, 0.6]) <= 5 * se)


def test_reproducible_and_thread_independent(monkeypatch):
    monkeypatch.setattr(mc, "BLOCK_ROUNDS", 1000)
    strat = eaos_reference_witness()
    a = simulate_quantum(make_eaos(), strat, 12_345, seed=8, threads=1)
    b = simulate_quantum(make_eaos(), strat, 12_345, seed=8, threads=4)
    assert a.to_dict() == b.to_dict()
    np.testing.assert_array_equal(a.counts, b.counts)
    c = simulate_quantum(make_eaos(), strat, 12_345, seed=9)
    assert c.counts.tolist() != a.counts.tolist()


def test_rounds_must_be_positive():
    with pytest.raises(ValueError):
        simulate_classical(make_chsh(), DeterministicStrategy((0, 0), (0, 0)), 0, seed=0)


def test_marginal_check_flags_signaling_counts():
    # Alice answers 0 whenever Bob is asked t=0 and 1 when t=1
    counts = np.zeros((1, 2, 2, 2), dtype=np.int64)
    counts[0, 0, 0, 0] = 5000
    counts[0, 1, 1, 0] = 5000
    rep = SimulationReport(10_000, 0, 0.0, 0.0, 0, counts)
    assert marginal_deviation(rep) > 5


def test_classical_marginals_trivially_no_signaling():
    rep = simulate_classical(make_eaos(), DeterministicStrategy((0, 1, 1), (1, 0, 1)), 50_000, seed=3)
    assert marginal_deviation(rep) == 0.0


def test_estimator_consistency_across_seeds():
    game = make_chsh()
    strat = chsh_reference_witness()
    exact = objective(game, strat)
    hits = sum(within(simulate_quantum(game, strat, 10**5, seed=s), exact) for s in range(100))
    assert hits >= 99
