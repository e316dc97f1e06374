from __future__ import annotations

import numpy as np
import pytest
from app.services.capacity import (
    code_capacity,
    code_capacity_fn,
    coherent_information,
    conditional_entropy,
    entropy,
    find_sign_changes,
    find_thresholds,
    hashing_capacity,
    hashing_capacity_of,
    hashing_threshold,
    q_ss,
    threshold,
)
from app.services.cat_analytic import cat_code
from app.services.channel import depolarizing, pauli_channel, uniform_assignment
from app.services.coset_enumerator import JointDistribution, joint_distribution
from app.services.pauli_algebra import StabilizerCode, build_code, multiply, random_stabilizer_code


def test_entropy_basics() -> None:
    assert entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert entropy([1.0, 0.0, 0.0, 0.0]) == 0.0
    assert entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-15)
    assert entropy([0.25, 0.25], normalized=False) == pytest.approx(1.0, abs=1e-15)


def test_entropy_rejects_bad_distributions() -> None:
    with pytest.raises(ValueError):
        entropy([0.6, 0.6])
    with pytest.raises(ValueError):
        entropy([1.2, -0.2])


def test_hashing_capacity() -> None:
    assert hashing_capacity(1.0) == pytest.approx(1.0, abs=1e-15)
    assert hashing_capacity(0.85) == pytest.approx(0.152415, abs=1e-5)
    assert hashing_capacity(0.81) < 0.0
    assert hashing_capacity_of(pauli_channel(1.0, 0.0, 0.0, 0.0)) == pytest.approx(1.0)


def test_hashing_threshold_matches_published_value() -> None:
    assert hashing_threshold() == pytest.approx(0.81071, abs=5e-5)


def test_trivial_code_reduces_to_hashing() -> None:
    result = code_capacity(cat_code(1), depolarizing(0.85))
    assert result.q_ss == pytest.approx(hashing_capacity(0.85), abs=1e-12)
    assert result.h_syndrome == pytest.approx(0.0, abs=1e-15)


def test_perfect_channel_gives_one_over_block_size() -> None:
    assert code_capacity(cat_code(5), depolarizing(1.0)).q_ss == pytest.approx(0.2, abs=1e-12)


def test_sx2_routes_agree(cat3: StabilizerCode) -> None:
    dist = joint_distribution(cat3, uniform_assignment(depolarizing(0.82), 3))
    result = q_ss(dist, 3)
    assert result.s_x2 == pytest.approx(conditional_entropy(dist), abs=1e-12)
    assert result.h_joint - result.h_syndrome == pytest.approx(result.s_x2, abs=1e-15)


IDENTITY_FIDELITIES = [0.75, 0.8, 0.81, 0.85, 0.95]


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("f", IDENTITY_FIDELITIES)
def test_qss_equals_coherent_information_for_random_codes(seed: int, f: float) -> None:
    code = random_stabilizer_code(2 + seed % 4, seed)
    dist = joint_distribution(code, uniform_assignment(depolarizing(f), code.n))
    assert q_ss(dist, code.n).q_ss == pytest.approx(coherent_information(dist, code.n), abs=1e-12)


@pytest.mark.parametrize("p", range(1, 8))
@pytest.mark.parametrize("f", IDENTITY_FIDELITIES)
def test_qss_equals_coherent_information_for_cat_codes(p: int, f: float) -> None:
    dist = joint_distribution(cat_code(p), uniform_assignment(depolarizing(f), p))
    assert q_ss(dist, p).q_ss == pytest.approx(coherent_information(dist, p), abs=1e-12)


def test_qss_equals_coherent_information_under_general_channel(rotcat5: StabilizerCode) -> None:
    channel = pauli_channel(0.82, 0.03, 0.05, 0.1)
    dist = joint_distribution(rotcat5, uniform_assignment(channel, 5))
    assert q_ss(dist, 5).q_ss == pytest.approx(coherent_information(dist, 5), abs=1e-12)


def test_code_capacity_fn_wraps_depolarizing(cat3: StabilizerCode) -> None:
    fn = code_capacity_fn(cat3)
    assert fn(0.9) == pytest.approx(code_capacity(cat3, depolarizing(0.9)).q_ss, abs=1e-15)


def test_sign_changes_and_largest_root() -> None:
    def parabola(f: float) -> float:
        return (f - 0.8) * (f - 0.9)

    cells = find_sign_changes(parabola, (0.75, 0.95), step=0.01)
    assert len(cells) == 2
    roots = find_thresholds(parabola, (0.75, 0.95))
    assert roots == pytest.approx([0.8, 0.9], abs=1e-6)
    assert threshold(parabola, (0.75, 0.95)) == pytest.approx(0.9, abs=1e-6)


def test_threshold_without_sign_change_raises() -> None:
    with pytest.raises(ValueError):
        threshold(lambda f: 1.0, (0.75, 0.95))
    with pytest.raises(ValueError):
        find_sign_changes(lambda f: 1.0, (0.9, 0.8))


def test_qss_ignores_row_order_and_non_identity_column_order() -> None:
    code = random_stabilizer_code(5, seed=9)
    dist = joint_distribution(code, uniform_assignment(pauli_channel(0.82, 0.03, 0.05, 0.1), 5))
    rows = np.random.default_rng(9).permutation(dist.rows)
    expected = q_ss(dist, 5).q_ss
    for columns in ([0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1]):
        relabeled = JointDistribution(n=5, table=dist.table[rows][:, columns])
        assert q_ss(relabeled, 5).q_ss == pytest.approx(expected, abs=1e-12)


def test_qss_is_invariant_under_logical_representative_choice() -> None:
    generators = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
    code = build_code(5, generators)
    lx, lz = code.logical_x, code.logical_z
    channel = pauli_channel(0.82, 0.03, 0.05, 0.1)
    expected = code_capacity(code, channel).q_ss
    for alt_x, alt_z in [(lz, lx), (multiply(lx, lz), lz), (multiply(lx, code.generators[2]), lz)]:
        other = build_code(5, generators, alt_x, alt_z)
        assert code_capacity(other, channel).q_ss == pytest.approx(expected, abs=1e-12)


def test_sx2_routes_must_agree_to_twelve_digits(monkeypatch: pytest.MonkeyPatch, cat3: StabilizerCode) -> None:
    dist = joint_distribution(cat3, uniform_assignment(depolarizing(0.82), 3))
    exact = conditional_entropy(dist)
    monkeypatch.setattr("app.services.capacity.conditional_entropy", lambda _: exact + 1e-11)
    with pytest.raises(RuntimeError, match="S_X2 routes disagree"):
        q_ss(dist, 3)
