from __future__ import annotations

from pydantic import BaseModel, Field, field_validator, model_validator

_PAULI_ALPHABET = frozenset("IXYZ")


class CodeDescription(BaseModel):
    """JSON description of an [n, 1] stabilizer code."""

    n: int = Field(ge=1, le=32)
    generators: list[str] = Field(default_factory=list)
    logical_x: str | None = None
    logical_z: str | None = None
    name: str | None = Field(default=None, max_length=128)

    @field_validator("generators")
    @classmethod
    def validate_generator_letters(cls, generators: list[str]) -> list[str]:
        for generator in generators:
            if not generator or set(generator) - _PAULI_ALPHABET:
                raise ValueError(f"Invalid Pauli string {generator!r}; expected letters from I, X, Y, Z")
        return generators

    @model_validator(mode="after")
    def validate_sizes(self) -> "CodeDescription":
        if len(self.generators) != self.n - 1:
            raise ValueError(f"An [n, 1] code needs n - 1 = {self.n - 1} generators, got {len(self.generators)}")
        for generator in self.generators:
            if len(generator) != self.n:
                raise ValueError(f"generator {generator!r} has length {len(generator)}, expected n={self.n}")
        for label, text in (("logical_x", self.logical_x), ("logical_z", self.logical_z)):
            if text is None:
                continue
            if len(text) != self.n or set(text) - _PAULI_ALPHABET:
                raise ValueError(f"{label} {text!r} must be a Pauli string of length {self.n}")
        return self
