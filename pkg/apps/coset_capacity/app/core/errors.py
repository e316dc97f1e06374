from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from app.services.pauli_algebra import StabilizerViolation


class EnumerationLimitError(ValueError):
    """Raised when a 4^n enumeration is requested beyond the configured cap."""

    def __init__(self, n: int, cap: int) -> None:
        super().__init__(f"Block size n={n} exceeds the enumeration cap of {cap} (set COSETCAP_ENUMERATION_CAP)")
        self.n = n
        self.cap = cap


class InvalidCodeError(ValueError):
    def __init__(self, violation: StabilizerViolation) -> None:
        super().__init__(f"Invalid stabilizer code: {violation.kind.value}: {violation.message}")
        self.violation = violation
