import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xorgames import (
    BellState,
    TwoQubitState,
    apply_rotations,
    bell_vector,
    joint_outcome_probs,
    parity_distribution,
    theta_argument,
)
from xorgames.kernel import (
    ALL_BELL_STATES,
    bell_decomposition_of_parity,
    kernel_agreement,
    parity_observable,
)

R2 = 1 / math.sqrt(2)
angles = st.floats(-10.0, 10.0, allow_nan=False)


def rotate_by_hand(amps, alpha, beta):
    """Independent oracle: build R(a) (x) R(b) column by column from
    R(theta)|y> = cos(theta)|y> + (-1)^y sin(theta)|1-y>."""

    def single(theta):
        m = np.zeros((2, 2))
        for y in (0, 1):
            m[y, y] += math.cos(theta)
            m[1 - y, y] += (-1) ** y * math.sin(theta)
        return m

    ra, rb = single(alpha), single(beta)
    out = np.zeros(4)
    for a_in in (0, 1):
        for b_in in (0, 1):
            for a_out in (0, 1):
                for b_out in (0, 1):
                    out[2 * a_out + b_out] += ra[a_out, a_in] * rb[b_out, b_in] * amps[2 * a_in + b_in]
    return out


def test_bell_vectors():
    np.testing.assert_allclose(bell_vector(BellState.PHI_PLUS).amplitudes, [R2, 0, 0, R2], atol=1e-16)
    np.testing.assert_allclose(bell_vector(BellState.PHI_MINUS).amplitudes, [R2, 0, 0, -R2], atol=1e-16)
    np.testing.assert_allclose(bell_vector(BellState.PSI_PLUS).amplitudes, [0, R2, R2, 0], atol=1e-16)
    np.testing.assert_allclose(bell_vector(BellState.PSI_MINUS).amplitudes, [0, R2, -R2, 0], atol=1e-16)
    for b in ALL_BELL_STATES:
        assert bell_vector(b).norm == pytest.approx(1.0, abs=1e-15)


def test_bell_labels_and_parsing():
    assert BellState.from_bits(1, 0) is BellState.PHI_MINUS
    assert BellState.parse("ψ−") is BellState.PSI_MINUS
    assert BellState.parse("phi+") is BellState.PHI_PLUS
    assert BellState.parse("psi+") is BellState.PSI_PLUS
    assert BellState.PHI_MINUS.label == "φ−"
    with pytest.raises(ValueError):
        BellState.parse("chi+")


def test_identity_rotation():
    psi = bell_vector(BellState.PSI_PLUS)
    np.testing.assert_array_equal(apply_rotations(psi, 0.0, 0.0).amplitudes, psi.amplitudes)


def test_phi_plus_quarter_turn_gives_minus_singlet():
    out = apply_rotations(bell_vector(BellState.PHI_PLUS), math.pi / 2, 0.0).amplitudes
    np.testing.assert_allclose(out, rotate_by_hand(bell_vector(BellState.PHI_PLUS).amplitudes, math.pi / 2, 0.0), atol=1e-15)
    np.testing.assert_allclose(out, [0, -R2, R2, 0], atol=1e-15)
    np.testing.assert_allclose(out, -bell_vector(BellState.PSI_MINUS).amplitudes, atol=1e-15)


@given(st.sampled_from(ALL_BELL_STATES), angles, angles)
def test_rotation_matches_hand_built_operator(b, alpha, beta):
    psi = bell_vector(b)
    np.testing.assert_allclose(
        apply_rotations(psi, alpha, beta).amplitudes, rotate_by_hand(psi.amplitudes, alpha, beta), atol=1e-14
    )


@given(st.sampled_from(ALL_BELL_STATES), angles, angles)
def test_rotated_bell_state_closed_form(b, alpha, beta):
    # cos(u)|B_xy> + (-1)^(1-x) sin(u)|B_(1-x)(1-y)>, u = alpha + beta*(-1)^(x xor (1-y))
    x, y = b.value
    u = alpha + beta * (-1) ** (x ^ (1 - y))
    partner = bell_vector(BellState.from_bits(1 - x, 1 - y)).amplitudes
    expected = math.cos(u) * bell_vector(b).amplitudes + (-1) ** (1 - x) * math.sin(u) * partner
    np.testing.assert_allclose(apply_rotations(bell_vector(b), alpha, beta).amplitudes, expected, atol=1e-14)


def test_joint_outcomes_unrotated():
    p = joint_outcome_probs(bell_vector(BellState.PHI_PLUS))
    np.testing.assert_allclose(p, [[0.5, 0], [0, 0.5]], atol=1e-15)
    p = joint_outcome_probs(bell_vector(BellState.PSI_MINUS))
    np.testing.assert_allclose(p, [[0, 0.5], [0.5, 0]], atol=1e-15)


def test_phi_minus_eighth_turns_half_even():
    state = apply_rotations(bell_vector(BellState.PHI_MINUS), math.pi / 8, math.pi / 8)
    by_hand = rotate_by_hand(bell_vector(BellState.PHI_MINUS).amplitudes, math.pi / 8, math.pi / 8)
    even = by_hand[0] ** 2 + by_hand[3] ** 2
    assert even == pytest.approx(0.5, abs=1e-15)
    assert parity_distribution(state).p_even == pytest.approx(even, abs=1e-15)


def test_parity_of_unrotated_bell_states():
    assert parity_distribution(bell_vector(BellState.PHI_PLUS)).p_even == pytest.approx(1.0, abs=1e-15)
    assert parity_distribution(bell_vector(BellState.PHI_MINUS)).p_even == pytest.approx(1.0, abs=1e-15)
    assert parity_distribution(bell_vector(BellState.PSI_PLUS)).p_odd == pytest.approx(1.0, abs=1e-15)
    assert parity_distribution(bell_vector(BellState.PSI_MINUS)).p_odd == pytest.approx(1.0, abs=1e-15)


def test_theta_arguments():
    assert theta_argument(BellState.PHI_PLUS, 0.7, 0.7) == 0.0
    assert theta_argument(BellState.PSI_MINUS, 0.7, 0.7) == pytest.approx(math.pi / 2)
    assert theta_argument(BellState.PHI_MINUS, math.pi / 8, math.pi / 8) == pytest.approx(math.pi / 4)
    assert theta_argument(BellState.PSI_PLUS, 0.1, 0.2) == pytest.approx(math.pi / 2 + 0.3)


@given(st.sampled_from(ALL_BELL_STATES), angles, angles)
def test_parity_distribution_is_cos_squared_theta(b, alpha, beta):
    dist = parity_distribution(apply_rotations(bell_vector(b), alpha, beta))
    assert dist.p_even + dist.p_odd == pytest.approx(1.0, abs=1e-12)
    assert min(dist.p_even, dist.p_odd) >= 0
    assert abs(dist.p_even - math.cos(theta_argument(b, alpha, beta)) ** 2) < 1e-12


@given(st.sampled_from(ALL_BELL_STATES), angles, angles, angles, angles)
def test_rotations_compose(b, a1, b1, a2, b2):
    psi = bell_vector(b)
    twice = apply_rotations(apply_rotations(psi, a1, b1), a2, b2)
    once = apply_rotations(psi, a1 + a2, b1 + b2)
    np.testing.assert_allclose(twice.amplitudes, once.amplitudes, atol=1e-12)


@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4).filter(lambda v: sum(x * x for x in v) > 1e-3), angles, angles)
def test_rotations_preserve_norm(raw, alpha, beta):
    amps = np.array(raw) / np.linalg.norm(raw)
    out = apply_rotations(TwoQubitState(amps), alpha, beta)
    assert out.is_normalized(1e-12)


def test_parity_observable_decomposes_into_bell_projectors():
    np.testing.assert_array_equal(parity_observable(), np.diag([1.0, -1.0, -1.0, 1.0]))
    assert np.max(np.abs(bell_decomposition_of_parity() - parity_observable())) <= 1e-15


def test_kernel_agreement_over_random_angles():
    assert kernel_agreement(samples=1000, seed=0) < 1e-12
