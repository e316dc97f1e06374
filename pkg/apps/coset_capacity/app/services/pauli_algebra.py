"""Binary-symplectic Pauli operators and [n, 1] stabilizer codes.

Operators are kept modulo phase as a pair of n-bit integers. Qubit 1 is the
leftmost character of a Pauli string and the least significant bit of both
masks. Syndrome bit i is the commutation sign of an error with generator i,
bit 0 least significant.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from app.core.config import get_settings
from app.core.errors import EnumerationLimitError, InvalidCodeError
from app.models.enums import CodeFamily, LogicalClass, ViolationKind

logger = logging.getLogger(__name__)

MAX_QUBITS = 32
PAULI_LETTERS = "IXYZ"

# (x, z) bits per letter
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}

# x + 2z -> column in (I, X, Y, Z) order; shared by channel letters and logical classes
LETTER_COLUMN = np.array([0, 1, 3, 2], dtype=np.uint8)

Syndrome = int


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x_bits: int
    z_bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"Pauli operators support 1..{MAX_QUBITS} qubits, got n={self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask or self.x_bits < 0 or self.z_bits < 0:
            raise ValueError(f"Bit masks exceed n={self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n, 0, 0)

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def symplectic(self) -> int:
        """The 2n-bit vector (x | z << n)."""
        return self.x_bits | (self.z_bits << self.n)

    @classmethod
    def from_symplectic(cls, n: int, vector: int) -> PauliOperator:
        mask = (1 << n) - 1
        return cls(n, vector & mask, vector >> n)

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[((self.x_bits >> qubit) & 1, (self.z_bits >> qubit) & 1)]

    def __str__(self) -> str:
        return pauli_to_string(self)


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    generators: tuple[PauliOperator, ...]
    logical_x: PauliOperator
    logical_z: PauliOperator
    family: CodeFamily = CodeFamily.CUSTOM
    name: str | None = None

    @property
    def k(self) -> int:
        return self.n - len(self.generators)

    @property
    def label(self) -> str:
        return self.name or f"[{self.n},{self.k}] " + ",".join(str(g) for g in self.generators)


@dataclass(frozen=True)
class StabilizerViolation:
    kind: ViolationKind
    message: str


@dataclass(frozen=True)
class DegeneracyProfile:
    max_weight: int
    errors_in_stabilizer: int
    shared_cosets: int

    @property
    def degenerate(self) -> bool:
        return self.errors_in_stabilizer > 0 or self.shared_cosets > 0


def pauli_from_string(text: str) -> PauliOperator:
    if not text:
        raise ValueError("Pauli string must be nonempty")
    if len(text) > MAX_QUBITS:
        raise ValueError(f"Pauli string longer than {MAX_QUBITS} qubits: {text!r}")
    x_bits = 0
    z_bits = 0
    for qubit, letter in enumerate(text):
        if letter not in _LETTER_BITS:
            raise ValueError(f"Invalid Pauli letter {letter!r} in {text!r}; expected one of I, X, Y, Z")
        x, z = _LETTER_BITS[letter]
        x_bits |= x << qubit
        z_bits |= z << qubit
    return PauliOperator(len(text), x_bits, z_bits)


def pauli_to_string(e: PauliOperator) -> str:
    return "".join(e.letter(qubit) for qubit in range(e.n))


def weight(e: PauliOperator) -> int:
    return (e.x_bits | e.z_bits).bit_count()


def _require_same_size(a: PauliOperator, b: PauliOperator) -> None:
    if a.n != b.n:
        raise ValueError(f"Pauli operators act on different block sizes ({a.n} vs {b.n})")


def symplectic_product(a: PauliOperator, b: PauliOperator) -> int:
    _require_same_size(a, b)
    return ((a.x_bits & b.z_bits).bit_count() + (a.z_bits & b.x_bits).bit_count()) & 1


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return symplectic_product(a, b) == 0


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _require_same_size(a, b)
    return PauliOperator(a.n, a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits)


def _require_code_size(e: PauliOperator, code: StabilizerCode) -> None:
    if e.n != code.n:
        raise ValueError(f"Error acts on {e.n} qubits but the code has n={code.n}")


def syndrome(e: PauliOperator, code: StabilizerCode) -> Syndrome:
    _require_code_size(e, code)
    bits = 0
    for index, generator in enumerate(code.generators):
        bits |= symplectic_product(e, generator) << index
    return bits


def logical_class(e: PauliOperator, code: StabilizerCode) -> LogicalClass:
    _require_code_size(e, code)
    anti_z = symplectic_product(e, code.logical_z)
    anti_x = symplectic_product(e, code.logical_x)
    return LogicalClass.from_column(int(LETTER_COLUMN[anti_z + 2 * anti_x]))


# --- GF(2) linear algebra on integer rows -----------------------------------


def _xor_basis(vectors: Sequence[int]) -> dict[int, int]:
    """Echelon basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for vector in vectors:
        reduced = _reduce(vector, basis)
        if reduced:
            basis[reduced.bit_length() - 1] = reduced
    return basis


def _reduce(vector: int, basis: dict[int, int]) -> int:
    while vector:
        lead = vector.bit_length() - 1
        row = basis.get(lead)
        if row is None:
            return vector
        vector ^= row
    return 0


def gf2_rank(vectors: Sequence[int]) -> int:
    return len(_xor_basis(vectors))


def gf2_nullspace(rows: Sequence[int], width: int) -> list[int]:
    """Basis of {v : popcount(row & v) is even for every row}, one vector per free column."""
    pivots: list[tuple[int, int]] = []
    for row in rows:
        for col, pivot_row in pivots:
            if (row >> col) & 1:
                row ^= pivot_row
        if row == 0:
            continue
        col = row.bit_length() - 1
        pivots = [(c, r ^ row if (r >> col) & 1 else r) for c, r in pivots]
        pivots.append((col, row))

    pivot_cols = {col for col, _ in pivots}
    basis: list[int] = []
    for free in range(width):
        if free in pivot_cols:
            continue
        vector = 1 << free
        for col, pivot_row in pivots:
            if (pivot_row >> free) & 1:
                vector |= 1 << col
        basis.append(vector)
    return basis


def _swapped(op: PauliOperator) -> int:
    # popcount(v & swapped(g)) parity == symplectic product of v and g
    return op.z_bits | (op.x_bits << op.n)


def in_stabilizer_group(e: PauliOperator, code: StabilizerCode) -> bool:
    _require_code_size(e, code)
    basis = _xor_basis([g.symplectic for g in code.generators])
    return _reduce(e.symplectic, basis) == 0


# --- validation and logical operators ---------------------------------------


def _generator_violation(n: int, generators: Sequence[PauliOperator]) -> StabilizerViolation | None:
    for generator in generators:
        if generator.n != n:
            return StabilizerViolation(
                ViolationKind.SIZE_MISMATCH, f"generator {generator} acts on {generator.n} qubits, expected {n}"
            )
    if len(generators) != n - 1:
        return StabilizerViolation(
            ViolationKind.WRONG_GENERATOR_COUNT,
            f"{len(generators)} generators on {n} qubits gives k={n - len(generators)}, expected k=1",
        )
    for generator in generators:
        if generator.is_identity:
            return StabilizerViolation(ViolationKind.IDENTITY_GENERATOR, "identity cannot be a generator")
    for i, first in enumerate(generators):
        for second in generators[i + 1 :]:
            if not commutes(first, second):
                return StabilizerViolation(
                    ViolationKind.ANTICOMMUTING_GENERATORS, f"generators {first} and {second} anticommute"
                )
    if gf2_rank([g.symplectic for g in generators]) != len(generators):
        return StabilizerViolation(ViolationKind.DEPENDENT_GENERATORS, "generators are not independent over GF(2)")
    return None


def validate_stabilizer(code: StabilizerCode) -> StabilizerViolation | None:
    """Return the first violated code invariant, or None when the code is valid."""
    violation = _generator_violation(code.n, code.generators)
    if violation is not None:
        return violation

    basis = _xor_basis([g.symplectic for g in code.generators])
    for label, logical in (("logical_x", code.logical_x), ("logical_z", code.logical_z)):
        if logical.n != code.n:
            return StabilizerViolation(ViolationKind.SIZE_MISMATCH, f"{label} acts on {logical.n} qubits")
        for generator in code.generators:
            if not commutes(logical, generator):
                return StabilizerViolation(
                    ViolationKind.LOGICAL_NOT_IN_NORMALIZER, f"{label} {logical} anticommutes with {generator}"
                )
        if _reduce(logical.symplectic, basis) == 0:
            return StabilizerViolation(ViolationKind.LOGICAL_IN_STABILIZER, f"{label} {logical} lies in the stabilizer")
    if commutes(code.logical_x, code.logical_z):
        return StabilizerViolation(ViolationKind.LOGICALS_COMMUTE, "logical_x and logical_z commute")
    return None


def derive_logicals(n: int, generators: Sequence[PauliOperator]) -> tuple[PauliOperator, PauliOperator]:
    """Pick (logical_x, logical_z) for an independent commuting generator set of size n - 1.

    Pure Z-type and pure X-type representatives are preferred when the code has
    them, so cat codes get Z on qubit 1 and X on every qubit.
    """
    normalizer = _normalizer_outside_stabilizer(n, generators)
    basis = _xor_basis([g.symplectic for g in generators])

    z_type = [
        PauliOperator(n, 0, z)
        for z in gf2_nullspace([g.x_bits for g in generators], n)
        if _reduce(z << n, basis)
    ]
    x_type = [
        PauliOperator(n, x, 0)
        for x in gf2_nullspace([g.z_bits for g in generators], n)
        if _reduce(x, basis)
    ]

    if z_type and x_type and not commutes(x_type[0], z_type[0]):
        return x_type[0], z_type[0]
    if z_type:
        return _partner(z_type[0], normalizer), z_type[0]
    if x_type:
        return x_type[0], _partner(x_type[0], normalizer)
    first = normalizer[0]
    return first, _partner(first, normalizer)


def _normalizer_outside_stabilizer(n: int, generators: Sequence[PauliOperator]) -> list[PauliOperator]:
    violation = _generator_violation(n, generators)
    if violation is not None:
        raise InvalidCodeError(violation)
    basis = _xor_basis([g.symplectic for g in generators])
    outside = [v for v in gf2_nullspace([_swapped(g) for g in generators], 2 * n) if _reduce(v, basis)]
    return [PauliOperator.from_symplectic(n, v) for v in outside]


def _partner(op: PauliOperator, normalizer: Sequence[PauliOperator]) -> PauliOperator:
    for candidate in normalizer:
        if not commutes(op, candidate):
            return candidate
    # only elements of the stabilizer commute with the whole normalizer
    raise InvalidCodeError(StabilizerViolation(ViolationKind.LOGICAL_IN_STABILIZER, f"{op} lies in the stabilizer"))


def logical_partner(n: int, generators: Sequence[PauliOperator], op: PauliOperator) -> PauliOperator:
    """Normalizer element outside the stabilizer that anticommutes with ``op``."""
    if op.n != n:
        raise InvalidCodeError(StabilizerViolation(ViolationKind.SIZE_MISMATCH, f"{op} acts on {op.n} qubits"))
    return _partner(op, _normalizer_outside_stabilizer(n, generators))


def build_code(
    n: int,
    generators: Sequence[PauliOperator | str],
    logical_x: PauliOperator | str | None = None,
    logical_z: PauliOperator | str | None = None,
    *,
    family: CodeFamily = CodeFamily.CUSTOM,
    name: str | None = None,
) -> StabilizerCode:
    parsed = tuple(pauli_from_string(g) if isinstance(g, str) else g for g in generators)
    lx = pauli_from_string(logical_x) if isinstance(logical_x, str) else logical_x
    lz = pauli_from_string(logical_z) if isinstance(logical_z, str) else logical_z
    if lx is None:
        if lz is None:
            lx, lz = derive_logicals(n, parsed)
        else:
            lx = logical_partner(n, parsed, lz)
    elif lz is None:
        lz = logical_partner(n, parsed, lx)

    code = StabilizerCode(n=n, generators=parsed, logical_x=lx, logical_z=lz, family=family, name=name)
    violation = validate_stabilizer(code)
    if violation is not None:
        raise InvalidCodeError(violation)
    return code


def random_stabilizer_code(n: int, seed: int) -> StabilizerCode:
    """Sample n - 1 independent commuting generators, deterministic in ``seed``.

    Each generator is drawn uniformly from the normalizer of the ones already
    chosen; draws that fall in their span are discarded.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"Random codes support 1..{MAX_QUBITS} qubits, got n={n}")
    rng = np.random.default_rng(seed)
    chosen: list[PauliOperator] = []
    while len(chosen) < n - 1:
        basis = _xor_basis([g.symplectic for g in chosen])
        nullspace = gf2_nullspace([_swapped(g) for g in chosen], 2 * n)
        coefficients = rng.integers(0, 2, size=len(nullspace))
        vector = 0
        for coefficient, row in zip(coefficients, nullspace):
            if coefficient:
                vector ^= row
        if _reduce(vector, basis) == 0:
            continue
        chosen.append(PauliOperator.from_symplectic(n, vector))
    return build_code(n, chosen, name=f"random:{n}:{seed}")


# --- vectorized enumeration of all 4^n errors --------------------------------


def check_enumerable(n: int, cap: int | None = None) -> None:
    limit = cap if cap is not None else get_settings().enumeration_cap
    if n > limit:
        raise EnumerationLimitError(n, limit)


def iter_error_shards(n: int, sharded: bool = False) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (x_bits, z_bits) arrays covering every n-qubit Pauli error once.

    Unsharded order is lexicographic in (x_bits, z_bits). Sharded mode fixes
    the letters on qubits 1 and 2 and yields 16 shards in (x_low, z_low) order.
    """
    if not sharded or n < 2:
        index = np.arange(1 << (2 * n), dtype=np.uint64)
        yield index >> np.uint64(n), index & np.uint64((1 << n) - 1)
        return

    rest = n - 2
    index = np.arange(1 << (2 * rest), dtype=np.uint64)
    high_x = (index >> np.uint64(rest)) << np.uint64(2)
    high_z = (index & np.uint64((1 << rest) - 1)) << np.uint64(2)
    for lead in range(16):
        yield high_x | np.uint64(lead >> 2), high_z | np.uint64(lead & 3)


def anticommutation_parity(x: np.ndarray, z: np.ndarray, op: PauliOperator) -> np.ndarray:
    overlap = np.bitwise_count(x & np.uint64(op.z_bits)) + np.bitwise_count(z & np.uint64(op.x_bits))
    return (overlap & 1).astype(np.uint32)


def syndromes_of(code: StabilizerCode, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    bits = np.zeros(x.shape, dtype=np.uint32)
    for index, generator in enumerate(code.generators):
        bits |= anticommutation_parity(x, z, generator) << np.uint32(index)
    return bits


def classes_of(code: StabilizerCode, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    anti_z = anticommutation_parity(x, z, code.logical_z)
    anti_x = anticommutation_parity(x, z, code.logical_x)
    return LETTER_COLUMN[anti_z + 2 * anti_x]


def weights_of(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x | z)


def min_distance(code: StabilizerCode, cap: int | None = None) -> int:
    """Minimum weight over S-perp minus S, by exhaustive enumeration."""
    check_enumerable(code.n, cap)
    best = code.n + 1
    for x, z in iter_error_shards(code.n):
        logical = (syndromes_of(code, x, z) == 0) & (classes_of(code, x, z) != 0)
        if logical.any():
            best = min(best, int(weights_of(x, z)[logical].min()))
    return best


def degeneracy_profile(code: StabilizerCode, max_weight: int, cap: int | None = None) -> DegeneracyProfile:
    check_enumerable(code.n, cap)
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    in_stabilizer = 0
    shared = 0
    for x, z in iter_error_shards(code.n):
        weights = weights_of(x, z)
        low = (weights >= 1) & (weights <= max_weight)
        cosets = syndromes_of(code, x, z)[low].astype(np.uint64) * np.uint64(4) + classes_of(code, x, z)[low]
        in_stabilizer += int(np.count_nonzero(cosets == 0))
        _, counts = np.unique(cosets, return_counts=True)
        shared += int(np.count_nonzero(counts >= 2))
    return DegeneracyProfile(max_weight=max_weight, errors_in_stabilizer=in_stabilizer, shared_cosets=shared)
