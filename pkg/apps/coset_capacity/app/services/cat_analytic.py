"""Closed forms for the cat-code family.

A syndrome of the cat code is summarised by its Hamming weight r; the
C(p-1, r) syndromes of equal weight have identical rows, which makes Q_SS
cheap for any block size. Large-p terms are built in log space so that
underflowing probabilities still contribute their exact x log x terms.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from scipy.optimize import bisect

from app.models.enums import CodeFamily
from app.services.capacity import LN2, CapacityResult, hashing_capacity, threshold
from app.services.pauli_algebra import MAX_QUBITS, PauliOperator, StabilizerCode, build_code

logger = logging.getLogger(__name__)

ASYMPTOTIC_BRACKET = (0.75, 1.0)
ASYMPTOTIC_TOLERANCE = 1e-9

# Known cat-code thresholds for p = 1..14; None is the p -> infinity limit.
REFERENCE_THRESHOLDS: dict[int | None, float] = {
    1: 0.81071,
    2: 0.81148,
    3: 0.80987,
    4: 0.81010,
    5: 0.80964,
    6: 0.80991,
    7: 0.80977,
    8: 0.81004,
    9: 0.81002,
    10: 0.81028,
    11: 0.81032,
    12: 0.81056,
    13: 0.81062,
    14: 0.81085,
    None: 0.81808,
}


@dataclass(frozen=True)
class CatCosetProbs:
    p: int
    r: int
    probs: tuple[float, float, float, float]  # (phi+, psi+, psi-, phi-)
    multiplicity: int


def _check_block(p: int) -> None:
    if not 1 <= p <= MAX_QUBITS:
        raise ValueError(f"Cat codes support 1..{MAX_QUBITS} qubits, got p={p}")


def cat_code(p: int) -> StabilizerCode:
    _check_block(p)
    generators = [PauliOperator(p, 0, 1 | (1 << j)) for j in range(1, p)]
    return build_code(
        p,
        generators,
        logical_x=PauliOperator(p, (1 << p) - 1, 0),
        logical_z=PauliOperator(p, 0, 1),
        family=CodeFamily.CAT,
        name=f"cat:{p}",
    )


def rotated_cat_code(p: int) -> StabilizerCode:
    _check_block(p)
    generators = [PauliOperator(p, 1 | (1 << j), 0) for j in range(1, p)]
    return build_code(
        p,
        generators,
        logical_x=PauliOperator(p, 1, 0),
        logical_z=PauliOperator(p, 0, (1 << p) - 1),
        family=CodeFamily.ROTATED_CAT,
        name=f"rotcat:{p}",
    )


def _log_power(base: float, exponent: int) -> float:
    if exponent == 0:
        return 0.0
    if base <= 0.0:
        return -math.inf
    return exponent * math.log(base)


def _log_coset_terms(p: int, r: int, f: float) -> tuple[float, float, float, float]:
    """Natural logs of the four coset probabilities of one weight-r syndrome."""
    g = (1.0 - f) / 3.0
    log_psi = (p - r - 1) * LN2 + _log_power(g, p - r) + _log_power(f + g, r)
    if r == 0:
        plus = (f + g) ** p
        minus = (f - g) ** p
        phi_plus = 0.5 * (plus + minus)
        phi_minus = 0.5 * (plus - minus)
        log_phi_plus = math.log(phi_plus) if phi_plus > 0.0 else -math.inf
        log_phi_minus = math.log(phi_minus) if phi_minus > 0.0 else -math.inf
    else:
        log_phi_plus = log_phi_minus = (r - 1) * LN2 + _log_power(g, r) + _log_power(f + g, p - r)
    return (log_phi_plus, log_psi, log_psi, log_phi_minus)


def cat_coset_probs(p: int, r: int, f: float) -> CatCosetProbs:
    _check_block(p)
    if not 0 <= r <= p - 1:
        raise ValueError(f"Syndrome weight r={r} outside [0, {p - 1}]")
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"Fidelity must lie in [0, 1], got {f}")
    phi_plus, psi_plus, psi_minus, phi_minus = (math.exp(term) for term in _log_coset_terms(p, r, f))
    return CatCosetProbs(
        p=p, r=r, probs=(phi_plus, psi_plus, psi_minus, phi_minus), multiplicity=math.comb(p - 1, r)
    )


def _x_log2_x(log_value: float) -> float:
    if log_value == -math.inf:
        return 0.0
    return math.exp(log_value) * log_value / LN2


def cat_qss(p: int, f: float) -> CapacityResult:
    """Q_SS of cat(p) under depolarizing(f) from the weight classes, without enumeration."""
    _check_block(p)
    if p == 1:
        q = hashing_capacity(f)
        return CapacityResult(q_ss=q, s_x2=1.0 - q, p=1, h_syndrome=0.0, h_joint=1.0 - q)

    h_syndrome_terms: list[float] = []
    h_joint_terms: list[float] = []
    for r in range(p):
        multiplicity = math.comb(p - 1, r)
        logs = _log_coset_terms(p, r, f)
        finite = [value for value in logs if value != -math.inf]
        if not finite:
            continue
        peak = max(finite)
        log_row = peak + math.log(math.fsum(math.exp(value - peak) for value in finite))
        h_syndrome_terms.append(-multiplicity * _x_log2_x(log_row))
        h_joint_terms.extend(-multiplicity * _x_log2_x(value) for value in logs)

    h_syndrome = math.fsum(h_syndrome_terms)
    h_joint = math.fsum(h_joint_terms)
    return CapacityResult(
        q_ss=(1.0 + h_syndrome - h_joint) / p,
        s_x2=h_joint - h_syndrome,
        p=p,
        h_syndrome=h_syndrome,
        h_joint=h_joint,
    )


def cat_normalization(p: int, f: float) -> float:
    return math.fsum(
        math.comb(p - 1, r) * value for r in range(p) for value in cat_coset_probs(p, r, f).probs
    )


def cat_threshold(p: int, bracket: tuple[float, float] | None = None) -> float:
    return threshold(lambda f: cat_qss(p, f).q_ss, bracket)


def cat_threshold_table(p_max: int) -> list[tuple[int, float]]:
    if not 1 <= p_max <= 30:
        raise ValueError(f"p_max must lie in [1, 30], got {p_max}")
    table = []
    for p in range(1, p_max + 1):
        value = cat_threshold(p)
        logger.info("cat(%d) threshold %.6f", p, value)
        table.append((p, value))
    return table


def asymptotic_residual(f: float) -> float:
    g = (1.0 - f) / 3.0
    return (f - g) ** 2 / (f + g) - math.sqrt(8.0 * g * (f + g))


def asymptotic_threshold() -> float:
    """Root in (0.75, 1) where the r=0 and r~p/2 contributions have equal growth bases."""
    low, high = ASYMPTOTIC_BRACKET
    return float(bisect(asymptotic_residual, low, high, xtol=ASYMPTOTIC_TOLERANCE))
