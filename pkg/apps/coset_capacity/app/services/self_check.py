"""Self-verification suite behind ``verify``.

The quick suite sticks to small blocks; the full suite adds the known
threshold table and the 25-qubit concatenated scheme.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from app.services.capacity import code_capacity, coherent_information, hashing_capacity, q_ss
from app.services.cat_analytic import (
    REFERENCE_THRESHOLDS,
    asymptotic_threshold,
    cat_code,
    cat_coset_probs,
    cat_normalization,
    cat_qss,
    cat_threshold,
)
from app.services.channel import depolarizing, uniform_assignment
from app.services.concatenator import concatenated_ensemble, concatenated_qss, double_cat_threshold, flatten_levels
from app.services.coset_enumerator import check_normalized, joint_distribution
from app.services.pauli_algebra import random_stabilizer_code

logger = logging.getLogger(__name__)

CLOSED_FORM_TOLERANCE = 1e-12
IDENTITY_TOLERANCE = 1e-12
FLATTENED_TOLERANCE = 1e-10
NORMALIZATION_TOLERANCE = 1e-10
TABLE_TOLERANCE = 5e-5
ASYMPTOTIC_TOLERANCE = 5e-5
DOUBLE_CAT_TARGET = 0.80944
DOUBLE_CAT_TOLERANCE = 1e-4

ORACLE_FIDELITIES = (0.75, 0.81, 0.9)
FLATTENED_FIDELITIES = (0.8, 0.85, 0.9)
IDENTITY_FIDELITIES = (0.75, 0.8, 0.81, 0.85, 0.95)
IDENTITY_MAX_P = 7
IDENTITY_RANDOM_CODES = 20


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def check_normalization(max_p: int) -> tuple[bool, str]:
    worst = 0.0
    for p in range(2, max_p + 1):
        for f in ORACLE_FIDELITIES:
            dist = joint_distribution(cat_code(p), uniform_assignment(depolarizing(f), p))
            check_normalized(dist, NORMALIZATION_TOLERANCE)
            worst = max(worst, abs(dist.total() - 1.0), abs(cat_normalization(p, f) - 1.0))
    for f in FLATTENED_FIDELITIES:
        ensemble = concatenated_ensemble([cat_code(2), cat_code(2)], depolarizing(f))
        worst = max(worst, abs(ensemble.total_weight() - 1.0))
    return worst <= NORMALIZATION_TOLERANCE, f"worst grand-total deviation {worst:.3e}"


def check_closed_form(max_p: int) -> tuple[bool, str]:
    worst = 0.0
    for p in range(2, max_p + 1):
        for f in ORACLE_FIDELITIES:
            dist = joint_distribution(cat_code(p), uniform_assignment(depolarizing(f), p))
            for index, row in enumerate(dist.table):
                expected = np.array(cat_coset_probs(p, index.bit_count(), f).probs)
                worst = max(worst, float(np.max(np.abs(row - expected))))
    return worst <= CLOSED_FORM_TOLERANCE, f"worst entry deviation {worst:.3e} for p=2..{max_p}"


def check_coherent_identity(max_p: int, random_codes: int) -> tuple[bool, str]:
    worst = 0.0
    codes = [cat_code(p) for p in range(1, max_p + 1)]
    codes.extend(random_stabilizer_code(2 + seed % 4, seed) for seed in range(random_codes))
    for code in codes:
        for f in IDENTITY_FIDELITIES:
            dist = joint_distribution(code, uniform_assignment(depolarizing(f), code.n))
            worst = max(worst, abs(q_ss(dist, code.n).q_ss - coherent_information(dist, code.n)))
    return worst <= IDENTITY_TOLERANCE, f"worst |Q_SS - I_e| {worst:.3e} over {len(codes)} codes"


def check_flattened_concatenation() -> tuple[bool, str]:
    levels = [cat_code(2), cat_code(2)]
    flat = flatten_levels(levels)
    worst = 0.0
    for f in FLATTENED_FIDELITIES:
        recursive = concatenated_qss(levels, f).q_ss
        direct = code_capacity(flat, depolarizing(f)).q_ss
        worst = max(worst, abs(recursive - direct))
    return worst <= FLATTENED_TOLERANCE, f"worst recursive/flattened gap {worst:.3e}"


def check_hashing_beaten() -> tuple[bool, str]:
    f = 0.81
    cat_value = cat_qss(5, f).q_ss
    hashing_value = hashing_capacity(f)
    return cat_value > 0.0 > hashing_value, f"f={f}: cat(5) {cat_value:.6e}, hashing {hashing_value:.6e}"


def check_asymptotic_threshold() -> tuple[bool, str]:
    value = asymptotic_threshold()
    expected = REFERENCE_THRESHOLDS[None]
    return abs(value - expected) <= ASYMPTOTIC_TOLERANCE, f"{value:.6f} vs {expected:.5f}"


def check_threshold_table() -> tuple[bool, str]:
    misses = []
    for p in range(1, 15):
        value = cat_threshold(p)
        if abs(value - REFERENCE_THRESHOLDS[p]) > TABLE_TOLERANCE:
            misses.append(f"p={p}: {value:.6f} vs {REFERENCE_THRESHOLDS[p]:.5f}")
    return not misses, "; ".join(misses) or "p=1..14 within 5e-5"


def check_double_cat() -> tuple[bool, str]:
    value = double_cat_threshold()
    cat5 = cat_threshold(5)
    passed = abs(value - DOUBLE_CAT_TARGET) <= DOUBLE_CAT_TOLERANCE and value < cat5
    return passed, f"double cat {value:.6f}, cat(5) {cat5:.6f}"


def _suite(full: bool) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    max_p = 7 if full else 5
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("normalization", lambda: check_normalization(max_p)),
        ("closed_form_vs_enumeration", lambda: check_closed_form(max_p)),
        ("coherent_information_identity", lambda: check_coherent_identity(IDENTITY_MAX_P, IDENTITY_RANDOM_CODES)),
        ("flattened_concatenation", check_flattened_concatenation),
        ("hashing_beaten", check_hashing_beaten),
        ("asymptotic_threshold", check_asymptotic_threshold),
    ]
    if full:
        checks.append(("threshold_table", check_threshold_table))
        checks.append(("double_cat_threshold", check_double_cat))
    return checks


def run_checks(full: bool = False) -> list[CheckResult]:
    results = []
    for name, check in _suite(full):
        started = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as exc:
            logger.exception("Check %s raised", name)
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - started
        logger.info("check=%s passed=%s seconds=%.2f %s", name, passed, elapsed, detail)
        results.append(CheckResult(name=name, passed=passed, detail=detail, seconds=elapsed))
    return results
