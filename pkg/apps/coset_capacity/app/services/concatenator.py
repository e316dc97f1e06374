"""Multi-level concatenation through ensembles of conditional logical channels.

A level turns the channels on its n positions into one outcome per
syndrome: weight Pr(i) and the conditional Bell distribution Pr(B_j | i),
read as a logical (I, X, Y, Z) Pauli channel for the next level. Every
syndrome from every level is kept as side information, so only the final
level's conditional entropy enters the capacity.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from app.core.config import get_settings
from app.services.capacity import CapacityResult, entropy, threshold
from app.services.cat_analytic import cat_code, rotated_cat_code
from app.services.channel import PauliChannel, assignment_of, depolarizing, uniform_assignment
from app.services.coset_enumerator import joint_distribution
from app.services.pauli_algebra import PauliOperator, StabilizerCode, build_code

logger = logging.getLogger(__name__)

DOUBLE_CAT_BRACKET = (0.79, 0.82)
# merged weights drift by rounding across levels
ENSEMBLE_SUM_TOLERANCE = 1e-9

Probs = tuple[float, float, float, float]


@dataclass(frozen=True)
class ConditionalOutcome:
    weight: float
    channel: PauliChannel


@dataclass(frozen=True)
class ConditionalChannelEnsemble:
    outcomes: tuple[ConditionalOutcome, ...]
    qubits_consumed: int

    def total_weight(self) -> float:
        return math.fsum(outcome.weight for outcome in self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)


def _merge(pairs: Sequence[tuple[float, Probs]], qubits: int) -> ConditionalChannelEnsemble:
    """Merge outcomes whose conditional channels agree to ``merge_quantum``, in sorted key order."""
    quantum = get_settings().merge_quantum
    buckets: dict[tuple[int, ...], list[tuple[float, Probs]]] = {}
    for weight, probs in pairs:
        if weight <= 0.0:
            continue
        key = tuple(round(value / quantum) for value in probs)
        buckets.setdefault(key, []).append((weight, probs))

    outcomes = []
    for key in sorted(buckets):
        members = buckets[key]
        outcomes.append(
            ConditionalOutcome(weight=math.fsum(weight for weight, _ in members), channel=PauliChannel(members[0][1]))
        )
    return ConditionalChannelEnsemble(outcomes=tuple(outcomes), qubits_consumed=qubits)


def _conditionals(code: StabilizerCode, channels: Sequence[PauliChannel]) -> list[tuple[float, Probs]]:
    dist = joint_distribution(code, assignment_of(channels))
    pairs: list[tuple[float, Probs]] = []
    for row in dist.table.tolist():
        weight = math.fsum(row)
        if weight <= 0.0:
            continue
        conditional = [value / weight for value in row]
        scale = math.fsum(conditional)
        c_i, c_x, c_y, c_z = (value / scale for value in conditional)
        pairs.append((weight, (c_i, c_x, c_y, c_z)))
    return pairs


def condition(code: StabilizerCode, channel: PauliChannel | Sequence[PauliChannel]) -> ConditionalChannelEnsemble:
    """First concatenation level: physical channels in, conditional logical channels out."""
    channels = uniform_assignment(channel, code.n).per_qubit if isinstance(channel, PauliChannel) else tuple(channel)
    return _merge(_conditionals(code, channels), code.n)


def _multinomial(counts: Sequence[int]) -> int:
    result = math.factorial(sum(counts))
    for count in counts:
        result //= math.factorial(count)
    return result


def condition_ensemble(
    code: StabilizerCode,
    ensemble: ConditionalChannelEnsemble,
    symmetric: bool | None = None,
) -> ConditionalChannelEnsemble:
    """Next concatenation level: each position draws an independent outcome from ``ensemble``.

    Qubit-permutation symmetric codes only need one representative tuple per
    multiset of outcomes, weighted by its multinomial count.
    """
    symmetric = code.family.permutation_symmetric if symmetric is None else symmetric
    outcomes = ensemble.outcomes
    pairs: list[tuple[float, Probs]] = []

    if symmetric:
        draws = itertools.combinations_with_replacement(range(len(outcomes)), code.n)
    else:
        draws = itertools.product(range(len(outcomes)), repeat=code.n)

    tuples = 0
    for draw in draws:
        tuples += 1
        weight = math.prod(outcomes[index].weight for index in draw)
        if symmetric:
            weight *= _multinomial(list(Counter(draw).values()))
        for row_weight, probs in _conditionals(code, [outcomes[index].channel for index in draw]):
            pairs.append((weight * row_weight, probs))

    merged = _merge(pairs, ensemble.qubits_consumed * code.n)
    logger.info(
        "Concatenated %s over %d input outcomes: %d %s, %d merged outcomes",
        code.label,
        len(outcomes),
        tuples,
        "multisets" if symmetric else "tuples",
        len(merged),
    )
    return merged


def ensemble_entropy(ensemble: ConditionalChannelEnsemble) -> float:
    return math.fsum(outcome.weight * entropy(outcome.channel.probs) for outcome in ensemble.outcomes)


def ensemble_capacity(ensemble: ConditionalChannelEnsemble) -> float:
    return (1.0 - ensemble_entropy(ensemble)) / ensemble.qubits_consumed


def concatenated_ensemble(levels: Sequence[StabilizerCode], channel: PauliChannel) -> ConditionalChannelEnsemble:
    if not levels:
        raise ValueError("Concatenation needs at least one level")
    ensemble = condition(levels[0], channel)
    for code in levels[1:]:
        ensemble = condition_ensemble(code, ensemble)
    return ensemble


def ensemble_result(ensemble: ConditionalChannelEnsemble) -> CapacityResult:
    total = ensemble.total_weight()
    if abs(total - 1.0) > ENSEMBLE_SUM_TOLERANCE:
        raise RuntimeError(f"Concatenated ensemble weights sum to {total!r}, not 1")
    s_x2 = ensemble_entropy(ensemble)
    return CapacityResult(q_ss=(1.0 - s_x2) / ensemble.qubits_consumed, s_x2=s_x2, p=ensemble.qubits_consumed)


def concatenated_qss(levels: Sequence[StabilizerCode], f: float | PauliChannel) -> CapacityResult:
    channel = f if isinstance(f, PauliChannel) else depolarizing(f)
    return ensemble_result(concatenated_ensemble(levels, channel))


def concatenated_threshold(levels: Sequence[StabilizerCode], bracket: tuple[float, float] | None = None) -> float:
    return threshold(lambda f: concatenated_qss(levels, f).q_ss, bracket)


def double_cat_threshold() -> float:
    return concatenated_threshold([rotated_cat_code(5), cat_code(5)], DOUBLE_CAT_BRACKET)


# --- explicit flattening -----------------------------------------------------


def lift_operator(op: PauliOperator, inner: StabilizerCode) -> PauliOperator:
    """Replace every letter of an outer operator by the inner logical operator on its block."""
    x_bits = 0
    z_bits = 0
    for position in range(op.n):
        shift = position * inner.n
        if (op.x_bits >> position) & 1:
            x_bits ^= inner.logical_x.x_bits << shift
            z_bits ^= inner.logical_x.z_bits << shift
        if (op.z_bits >> position) & 1:
            x_bits ^= inner.logical_z.x_bits << shift
            z_bits ^= inner.logical_z.z_bits << shift
    return PauliOperator(op.n * inner.n, x_bits, z_bits)


def _concatenate_pair(inner: StabilizerCode, outer: StabilizerCode) -> StabilizerCode:
    n = inner.n * outer.n
    generators = [
        PauliOperator(n, g.x_bits << (block * inner.n), g.z_bits << (block * inner.n))
        for block in range(outer.n)
        for g in inner.generators
    ]
    generators.extend(lift_operator(g, inner) for g in outer.generators)
    return build_code(
        n,
        generators,
        logical_x=lift_operator(outer.logical_x, inner),
        logical_z=lift_operator(outer.logical_z, inner),
        name=f"{inner.label}>{outer.label}",
    )


def flatten_levels(levels: Sequence[StabilizerCode]) -> StabilizerCode:
    """The explicit [prod n, 1] code of a concatenation stack, innermost first."""
    if not levels:
        raise ValueError("Concatenation needs at least one level")
    code = levels[0]
    for outer in levels[1:]:
        code = _concatenate_pair(code, outer)
    return code
