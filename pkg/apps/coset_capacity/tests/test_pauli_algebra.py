from __future__ import annotations

import itertools

import numpy as np
import pytest
from app.core.errors import EnumerationLimitError, InvalidCodeError
from app.models.enums import LogicalClass, ViolationKind
from app.services.pauli_algebra import (
    PauliOperator,
    StabilizerCode,
    build_code,
    check_enumerable,
    commutes,
    degeneracy_profile,
    derive_logicals,
    in_stabilizer_group,
    iter_error_shards,
    logical_class,
    logical_partner,
    min_distance,
    multiply,
    pauli_from_string,
    pauli_to_string,
    random_stabilizer_code,
    symplectic_product,
    syndrome,
    validate_stabilizer,
    weight,
)

FIVE_QUBIT_GENERATORS = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]


def test_pauli_string_bits_follow_qubit_order() -> None:
    op = pauli_from_string("XYZI")
    assert op.n == 4
    assert op.x_bits == 0b0011
    assert op.z_bits == 0b0110
    assert pauli_to_string(op) == "XYZI"
    assert str(op) == "XYZI"


@pytest.mark.parametrize("text", ["", "XQZ", "xz"])
def test_pauli_from_string_rejects_bad_input(text: str) -> None:
    with pytest.raises(ValueError):
        pauli_from_string(text)


def test_operator_rejects_bits_beyond_block() -> None:
    with pytest.raises(ValueError):
        PauliOperator(2, 0b100, 0)
    with pytest.raises(ValueError):
        PauliOperator(0, 0, 0)


def test_weight_multiply_and_commutation() -> None:
    assert weight(pauli_from_string("XIZY")) == 3
    assert pauli_to_string(multiply(pauli_from_string("XI"), pauli_from_string("ZI"))) == "YI"
    assert symplectic_product(pauli_from_string("X"), pauli_from_string("Z")) == 1
    assert commutes(pauli_from_string("XX"), pauli_from_string("ZZ"))
    assert not commutes(pauli_from_string("XI"), pauli_from_string("YI"))


def test_symplectic_product_rejects_size_mismatch() -> None:
    with pytest.raises(ValueError):
        symplectic_product(pauli_from_string("X"), pauli_from_string("XX"))


def test_syndrome_bit_i_comes_from_generator_i(cat3: StabilizerCode) -> None:
    assert syndrome(pauli_from_string("III"), cat3) == 0
    assert syndrome(pauli_from_string("IXI"), cat3) == 0b01
    assert syndrome(pauli_from_string("IIX"), cat3) == 0b10
    assert syndrome(pauli_from_string("XII"), cat3) == 0b11
    assert syndrome(pauli_from_string("ZZZ"), cat3) == 0


def test_logical_class_matches_single_qubit_letter(cat3: StabilizerCode) -> None:
    assert logical_class(pauli_from_string("III"), cat3) is LogicalClass.I
    assert logical_class(pauli_from_string("XII"), cat3) is LogicalClass.X
    assert logical_class(pauli_from_string("YII"), cat3) is LogicalClass.Y
    assert logical_class(pauli_from_string("ZII"), cat3) is LogicalClass.Z
    assert logical_class(pauli_from_string("XXX"), cat3) is LogicalClass.X


def test_in_stabilizer_group(cat3: StabilizerCode) -> None:
    assert in_stabilizer_group(pauli_from_string("IZZ"), cat3)
    assert in_stabilizer_group(pauli_from_string("III"), cat3)
    assert not in_stabilizer_group(pauli_from_string("ZII"), cat3)


def test_derive_logicals_prefers_pure_types() -> None:
    generators = [pauli_from_string("ZZI"), pauli_from_string("ZIZ")]
    logical_x, logical_z = derive_logicals(3, generators)
    assert pauli_to_string(logical_x) == "XXX"
    assert pauli_to_string(logical_z) == "ZII"


def test_build_code_derives_anticommuting_logicals_for_five_qubit_code() -> None:
    code = build_code(5, FIVE_QUBIT_GENERATORS)
    assert validate_stabilizer(code) is None
    assert not commutes(code.logical_x, code.logical_z)
    assert code.k == 1


@pytest.mark.parametrize(
    ("n", "generators", "logical_x", "logical_z", "kind"),
    [
        (3, ["ZZI"], None, None, ViolationKind.WRONG_GENERATOR_COUNT),
        (2, ["II"], "XX", "ZI", ViolationKind.IDENTITY_GENERATOR),
        (3, ["ZZI", "XIX"], None, None, ViolationKind.ANTICOMMUTING_GENERATORS),
        (3, ["ZZI", "ZZI"], None, None, ViolationKind.DEPENDENT_GENERATORS),
        (2, ["ZZ"], "XI", "ZI", ViolationKind.LOGICAL_NOT_IN_NORMALIZER),
        (2, ["ZZ"], "XX", "ZZ", ViolationKind.LOGICAL_IN_STABILIZER),
        (2, ["ZZ"], "XX", "YY", ViolationKind.LOGICALS_COMMUTE),
        (3, ["ZZ", "ZIZ"], None, None, ViolationKind.SIZE_MISMATCH),
    ],
)
def test_build_code_reports_first_violation(
    n: int, generators: list[str], logical_x: str | None, logical_z: str | None, kind: ViolationKind
) -> None:
    with pytest.raises(InvalidCodeError) as exc_info:
        build_code(n, generators, logical_x, logical_z)
    assert exc_info.value.violation.kind is kind


def test_random_code_is_valid_and_deterministic() -> None:
    first = random_stabilizer_code(4, seed=7)
    second = random_stabilizer_code(4, seed=7)
    assert first == second
    assert validate_stabilizer(first) is None
    assert first.label == "random:4:7"
    assert len(first.generators) == 3


def test_random_code_on_one_qubit_has_no_generators() -> None:
    code = random_stabilizer_code(1, seed=3)
    assert code.generators == ()
    assert not commutes(code.logical_x, code.logical_z)


def test_min_distance(cat3: StabilizerCode) -> None:
    assert min_distance(cat3) == 1
    assert min_distance(build_code(5, FIVE_QUBIT_GENERATORS)) == 3


def test_degeneracy_profile_of_cat_code(cat3: StabilizerCode) -> None:
    singles = degeneracy_profile(cat3, max_weight=1)
    assert singles.errors_in_stabilizer == 0
    assert singles.shared_cosets == 1
    assert singles.degenerate

    pairs = degeneracy_profile(cat3, max_weight=2)
    assert pairs.errors_in_stabilizer == 3


def test_five_qubit_code_is_nondegenerate_at_weight_one() -> None:
    profile = degeneracy_profile(build_code(5, FIVE_QUBIT_GENERATORS), max_weight=1)
    assert not profile.degenerate


def test_check_enumerable_uses_cap() -> None:
    check_enumerable(12)
    with pytest.raises(EnumerationLimitError):
        check_enumerable(13)
    with pytest.raises(EnumerationLimitError):
        check_enumerable(4, cap=3)


@pytest.mark.parametrize("sharded", [False, True])
def test_error_shards_cover_every_error_once(sharded: bool) -> None:
    n = 4
    seen: list[int] = []
    for x, z in iter_error_shards(n, sharded=sharded):
        seen.extend((x | (z << 4)).tolist())
    assert len(seen) == 4**n
    assert len(set(seen)) == 4**n


def test_build_code_derives_logical_x_from_given_logical_z() -> None:
    code = build_code(3, ["ZZI", "ZIZ"], logical_z="XXX")
    assert pauli_to_string(code.logical_z) == "XXX"
    assert not commutes(code.logical_x, code.logical_z)
    assert validate_stabilizer(code) is None


def test_build_code_derives_logical_z_from_given_logical_x() -> None:
    code = build_code(3, ["ZZI", "ZIZ"], logical_x="ZII")
    assert pauli_to_string(code.logical_x) == "ZII"
    assert not commutes(code.logical_x, code.logical_z)
    assert validate_stabilizer(code) is None


def test_logical_partner_for_five_qubit_code() -> None:
    generators = [pauli_from_string(g) for g in FIVE_QUBIT_GENERATORS]
    given = pauli_from_string("ZZZZZ")
    partner = logical_partner(5, generators, given)
    assert not commutes(partner, given)
    assert all(commutes(partner, g) for g in generators)
    assert validate_stabilizer(build_code(5, generators, logical_x=partner, logical_z=given)) is None


def test_logical_partner_rejects_stabilizer_elements() -> None:
    with pytest.raises(InvalidCodeError) as exc_info:
        build_code(3, ["ZZI", "ZIZ"], logical_z="IZZ")
    assert exc_info.value.violation.kind is ViolationKind.LOGICAL_IN_STABILIZER
    with pytest.raises(InvalidCodeError) as exc_info:
        build_code(3, ["ZZI", "ZIZ"], logical_x="XX")
    assert exc_info.value.violation.kind is ViolationKind.SIZE_MISMATCH


def _random_operator(rng: np.random.Generator, n: int) -> PauliOperator:
    return PauliOperator(n, int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))


def _random_stabilizer_element(rng: np.random.Generator, code: StabilizerCode) -> PauliOperator:
    element = PauliOperator.identity(code.n)
    for generator in code.generators:
        if rng.integers(0, 2):
            element = multiply(element, generator)
    return element


def test_commutation_is_bilinear() -> None:
    rng = np.random.default_rng(20)
    for _ in range(200):
        a, b, c = (_random_operator(rng, 5) for _ in range(3))
        assert commutes(multiply(a, b), c) == (commutes(a, c) == commutes(b, c))


@pytest.mark.parametrize("seed", range(4))
def test_syndrome_and_class_are_constant_on_cosets(seed: int) -> None:
    code = random_stabilizer_code(5, seed)
    rng = np.random.default_rng(seed)
    for _ in range(50):
        e = _random_operator(rng, code.n)
        shifted = multiply(e, _random_stabilizer_element(rng, code))
        assert syndrome(shifted, code) == syndrome(e, code)
        assert logical_class(shifted, code) is logical_class(e, code)


def _class_relabeling(first: StabilizerCode, second: StabilizerCode) -> dict[LogicalClass, LogicalClass]:
    mapping: dict[LogicalClass, LogicalClass] = {}
    for letters in itertools.product("IXYZ", repeat=first.n):
        e = pauli_from_string("".join(letters))
        source, target = logical_class(e, first), logical_class(e, second)
        assert mapping.setdefault(source, target) is target
    return mapping


def test_logical_class_is_invariant_under_representative_choice() -> None:
    code = build_code(5, FIVE_QUBIT_GENERATORS)
    lx, lz = code.logical_x, code.logical_z
    shifted_x = multiply(lx, code.generators[0])
    alternatives = [(lz, lx), (multiply(lx, lz), lz), (lx, multiply(lx, lz)), (shifted_x, lz)]
    for alt_x, alt_z in alternatives:
        other = build_code(5, FIVE_QUBIT_GENERATORS, alt_x, alt_z)
        mapping = _class_relabeling(code, other)
        assert mapping[LogicalClass.I] is LogicalClass.I
        assert sorted(mapping.values()) == sorted(LogicalClass)


def _brute_force_distance(code: StabilizerCode) -> int:
    weights = []
    for letters in itertools.product("IXYZ", repeat=code.n):
        e = pauli_from_string("".join(letters))
        if syndrome(e, code) == 0 and logical_class(e, code) is not LogicalClass.I:
            weights.append(weight(e))
    return min(weights)


@pytest.mark.parametrize("seed", range(6))
def test_min_distance_matches_brute_force(seed: int) -> None:
    code = random_stabilizer_code(2 + seed % 5, seed)
    assert min_distance(code) == _brute_force_distance(code)


def test_rotated_cat_distance_is_one(rotcat5: StabilizerCode) -> None:
    assert min_distance(rotcat5) == 1
