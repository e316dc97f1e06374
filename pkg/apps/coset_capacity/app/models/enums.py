from __future__ import annotations

import enum


class LogicalClass(str, enum.Enum):
    I = "I"  # noqa: E741
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def column(self) -> int:
        return _COLUMNS[self]

    @property
    def bell_state(self) -> BellState:
        return _BELL[self]

    @classmethod
    def from_column(cls, column: int) -> LogicalClass:
        return _ORDER[column]


class BellState(str, enum.Enum):
    PHI_PLUS = "phi_plus"
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"
    PHI_MINUS = "phi_minus"


class ViolationKind(str, enum.Enum):
    SIZE_MISMATCH = "SIZE_MISMATCH"
    WRONG_GENERATOR_COUNT = "WRONG_GENERATOR_COUNT"
    IDENTITY_GENERATOR = "IDENTITY_GENERATOR"
    ANTICOMMUTING_GENERATORS = "ANTICOMMUTING_GENERATORS"
    DEPENDENT_GENERATORS = "DEPENDENT_GENERATORS"
    LOGICAL_NOT_IN_NORMALIZER = "LOGICAL_NOT_IN_NORMALIZER"
    LOGICAL_IN_STABILIZER = "LOGICAL_IN_STABILIZER"
    LOGICALS_COMMUTE = "LOGICALS_COMMUTE"


class CodeFamily(str, enum.Enum):
    CAT = "cat"
    ROTATED_CAT = "rotcat"
    CUSTOM = "custom"

    @property
    def permutation_symmetric(self) -> bool:
        return self in {CodeFamily.CAT, CodeFamily.ROTATED_CAT}

    @property
    def has_closed_form(self) -> bool:
        """Depolarizing capacity is ``cat_qss``; rotated tables only swap the psi+ and phi- columns."""
        return self in {CodeFamily.CAT, CodeFamily.ROTATED_CAT}


# Column order of every joint table: (phi+, psi+, psi-, phi-) = (I, X, Y, Z).
_ORDER = (LogicalClass.I, LogicalClass.X, LogicalClass.Y, LogicalClass.Z)
_COLUMNS = {cls: idx for idx, cls in enumerate(_ORDER)}
_BELL = {
    LogicalClass.I: BellState.PHI_PLUS,
    LogicalClass.X: BellState.PSI_PLUS,
    LogicalClass.Y: BellState.PSI_MINUS,
    LogicalClass.Z: BellState.PHI_MINUS,
}
