from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from app.core.config import get_settings
from app.services.pauli_algebra import LETTER_COLUMN, PauliOperator


@dataclass(frozen=True)
class PauliChannel:
    """Single-qubit Pauli channel with probabilities in (I, X, Y, Z) order."""

    probs: tuple[float, float, float, float]

    def __post_init__(self) -> None:
        if len(self.probs) != 4:
            raise ValueError(f"A Pauli channel needs 4 probabilities, got {len(self.probs)}")
        tolerance = get_settings().probability_tolerance
        for value in self.probs:
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"Channel probability {value} lies outside [0, 1]")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > tolerance:
            raise ValueError(f"Channel probabilities sum to {total!r}, not 1")

    @property
    def fidelity(self) -> float:
        return self.probs[0]


@dataclass(frozen=True)
class ChannelAssignment:
    per_qubit: tuple[PauliChannel, ...]

    @property
    def n(self) -> int:
        return len(self.per_qubit)

    @property
    def is_uniform(self) -> bool:
        return all(channel == self.per_qubit[0] for channel in self.per_qubit)

    def matrix(self) -> np.ndarray:
        return np.array([channel.probs for channel in self.per_qubit], dtype=np.float64)


def pauli_channel(p_i: float, p_x: float, p_y: float, p_z: float) -> PauliChannel:
    return PauliChannel((float(p_i), float(p_x), float(p_y), float(p_z)))


def depolarizing(f: float) -> PauliChannel:
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"Fidelity must lie in [0, 1], got {f}")
    g = (1.0 - f) / 3.0
    return PauliChannel((f, g, g, g))


def uniform_assignment(channel: PauliChannel, n: int) -> ChannelAssignment:
    if n < 1:
        raise ValueError("An assignment needs at least one qubit")
    return ChannelAssignment(tuple(channel for _ in range(n)))


def assignment_of(channels: Sequence[PauliChannel]) -> ChannelAssignment:
    return ChannelAssignment(tuple(channels))


def error_probability(assignment: ChannelAssignment, e: PauliOperator) -> float:
    if assignment.n != e.n:
        raise ValueError(f"Assignment covers {assignment.n} qubits but the error acts on {e.n}")
    probability = 1.0
    for qubit, channel in enumerate(assignment.per_qubit):
        letter = ((e.x_bits >> qubit) & 1) + 2 * ((e.z_bits >> qubit) & 1)
        probability *= channel.probs[int(LETTER_COLUMN[letter])]
    return probability


def error_probabilities(assignment: ChannelAssignment, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vectorized error_probability over arrays of (x_bits, z_bits)."""
    matrix = assignment.matrix()
    probabilities = np.ones(x.shape, dtype=np.float64)
    for qubit in range(assignment.n):
        shift = np.uint64(qubit)
        letters = ((x >> shift) & np.uint64(1)) + np.uint64(2) * ((z >> shift) & np.uint64(1))
        probabilities *= matrix[qubit][LETTER_COLUMN[letters]]
    return probabilities
