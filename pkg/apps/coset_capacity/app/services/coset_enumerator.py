"""Coset weight polynomials evaluated numerically by enumerating all 4^n errors.

Cell (i, j) of the joint table is the probability of the coset of the
stabilizer group with syndrome i and logical class j. Each cell is summed
with math.fsum inside a shard; shard partials are merged per cell, again with
math.fsum, in shard order (qubit-1/qubit-2 letters as (x_low, z_low) = 0..15),
so results do not depend on scheduling.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from app.core.config import get_settings
from app.core.errors import InvalidCodeError
from app.models.enums import BellState, LogicalClass
from app.services.channel import ChannelAssignment, error_probabilities, error_probability
from app.services.pauli_algebra import (
    PauliOperator,
    StabilizerCode,
    check_enumerable,
    classes_of,
    iter_error_shards,
    multiply,
    syndromes_of,
    validate_stabilizer,
)

logger = logging.getLogger(__name__)

CSV_HEADER = ["syndrome", *(state.value for state in BellState)]


@dataclass(frozen=True)
class JointDistribution:
    n: int
    table: np.ndarray  # shape (2^(n-1), 4), columns (phi+, psi+, psi-, phi-)
    k: int = 1

    @property
    def rows(self) -> int:
        return int(self.table.shape[0])

    def total(self) -> float:
        return math.fsum(self.table.ravel().tolist())


@dataclass(frozen=True)
class CosetSummary:
    p_no_error: float
    p_undetected_logical: float
    p_no_detection: float
    syndrome_marginals: tuple[float, ...]
    joint: JointDistribution


def _sorted_cell_sums(cells: np.ndarray, probabilities: np.ndarray, cell_count: int) -> list[float]:
    order = np.argsort(cells, kind="stable")
    sorted_cells = cells[order]
    sorted_probs = probabilities[order]
    bounds = np.searchsorted(sorted_cells, np.arange(cell_count + 1))
    return [math.fsum(sorted_probs[bounds[c] : bounds[c + 1]].tolist()) for c in range(cell_count)]


def _require_enumerable(code: StabilizerCode, assignment: ChannelAssignment) -> None:
    check_enumerable(code.n)
    if assignment.n != code.n:
        raise ValueError(f"Assignment covers {assignment.n} qubits but the code has n={code.n}")
    violation = validate_stabilizer(code)
    if violation is not None:
        raise InvalidCodeError(violation)


def joint_distribution(code: StabilizerCode, assignment: ChannelAssignment) -> JointDistribution:
    settings = get_settings()
    _require_enumerable(code, assignment)

    rows = 1 << len(code.generators)
    cell_count = rows * 4
    sharded = code.n >= settings.shard_min_qubits
    partials: list[list[float]] = []
    for x, z in iter_error_shards(code.n, sharded=sharded):
        cells = syndromes_of(code, x, z).astype(np.int64) * 4 + classes_of(code, x, z)
        partials.append(_sorted_cell_sums(cells, error_probabilities(assignment, x, z), cell_count))

    merged = [math.fsum(shard[c] for shard in partials) for c in range(cell_count)]
    table = np.array(merged, dtype=np.float64).reshape(rows, 4)
    logger.debug("Enumerated %d errors for %s into %d cosets", 1 << (2 * code.n), code.label, cell_count)
    return JointDistribution(n=code.n, table=table, k=code.k)


def coset_probability(code: StabilizerCode, assignment: ChannelAssignment, representative: PauliOperator) -> float:
    _require_enumerable(code, assignment)
    if representative.n != code.n:
        raise ValueError(f"Representative acts on {representative.n} qubits but the code has n={code.n}")
    return math.fsum(error_probability(assignment, member) for member in coset_members(code, representative))


def coset_members(code: StabilizerCode, representative: PauliOperator) -> list[PauliOperator]:
    """Every element representative * s for s in the stabilizer group, 2^(n-1) of them."""
    members = [representative]
    for generator in code.generators:
        members.extend(multiply(member, generator) for member in list(members))
    return members


def syndrome_marginals(dist: JointDistribution) -> list[float]:
    return [math.fsum(row) for row in dist.table.tolist()]


def coset_summary(dist: JointDistribution) -> CosetSummary:
    first_row = dist.table[0].tolist()
    return CosetSummary(
        p_no_error=first_row[LogicalClass.I.column],
        p_undetected_logical=math.fsum(first_row[1:]),
        p_no_detection=math.fsum(first_row),
        syndrome_marginals=tuple(syndrome_marginals(dist)),
        joint=dist,
    )


def check_normalized(dist: JointDistribution, tolerance: float | None = None) -> None:
    limit = tolerance if tolerance is not None else get_settings().normalization_tolerance
    if (dist.table < 0).any():
        raise ValueError("Joint distribution has negative entries")
    total = dist.total()
    if abs(total - 1.0) > limit:
        raise ValueError(f"Joint distribution sums to {total!r}, not 1")


def write_table_csv(dist: JointDistribution, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for index, row in enumerate(dist.table.tolist()):
        writer.writerow([index, *(f"{value:.17g}" for value in row)])
