from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import entr

from app.core.config import get_settings
from app.services.channel import PauliChannel, depolarizing, uniform_assignment
from app.services.coset_enumerator import JointDistribution, check_normalized, joint_distribution, syndrome_marginals
from app.services.pauli_algebra import StabilizerCode

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
ENTROPY_SUM_TOLERANCE = 1e-9
# the two S_X2 routes differ only by rounding
ROUTE_AGREEMENT_TOLERANCE = 1e-12

CapacityFn = Callable[[float], float]


@dataclass(frozen=True)
class CapacityResult:
    q_ss: float
    s_x2: float
    p: int
    h_syndrome: float | None = None
    h_joint: float | None = None


def entropy(xs: Iterable[float], *, normalized: bool = True) -> float:
    """Base-2 Shannon entropy with 0 log 0 = 0.

    ``normalized=False`` skips the sum-to-one check for partial sums used in
    closed-form identities.
    """
    values = np.asarray(list(xs), dtype=np.float64)
    if (values < 0).any():
        raise ValueError(f"Entropy needs nonnegative entries, got min {values.min()!r}")
    if normalized:
        total = math.fsum(values.tolist())
        if abs(total - 1.0) > ENTROPY_SUM_TOLERANCE:
            raise ValueError(f"Entropy input sums to {total!r}, not 1")
    return math.fsum(entr(values).tolist()) / LN2


def hashing_capacity_of(channel: PauliChannel) -> float:
    return 1.0 - entropy(channel.probs)


def hashing_capacity(f: float) -> float:
    return hashing_capacity_of(depolarizing(f))


def conditional_entropy(dist: JointDistribution) -> float:
    """S_X2 as the syndrome-weighted average of the conditional Bell entropies."""
    terms: list[float] = []
    for row in dist.table.tolist():
        weight = math.fsum(row)
        if weight <= 0.0:
            continue
        terms.append(weight * entropy(value / weight for value in row))
    return math.fsum(terms)


def q_ss(dist: JointDistribution, p: int) -> CapacityResult:
    check_normalized(dist)
    h_syndrome = entropy(syndrome_marginals(dist))
    h_joint = entropy(dist.table.ravel().tolist())
    s_x2 = h_joint - h_syndrome

    averaged = conditional_entropy(dist)
    if abs(averaged - s_x2) > ROUTE_AGREEMENT_TOLERANCE:
        raise RuntimeError(f"S_X2 routes disagree: {averaged!r} vs {s_x2!r}")

    return CapacityResult(
        q_ss=(1.0 + h_syndrome - h_joint) / p,
        s_x2=s_x2,
        p=p,
        h_syndrome=h_syndrome,
        h_joint=h_joint,
    )


def coherent_information(dist: JointDistribution, p: int) -> float:
    check_normalized(dist)
    # rho_Q: each syndrome eigenspace carries two equal eigenvalues Pr(i)/2
    s_q = entropy(half for marginal in syndrome_marginals(dist) for half in (marginal / 2.0, marginal / 2.0))
    s_rq = entropy(dist.table.ravel().tolist())
    return (s_q - s_rq) / p


def code_capacity(code: StabilizerCode, channel: PauliChannel) -> CapacityResult:
    return q_ss(joint_distribution(code, uniform_assignment(channel, code.n)), code.n)


def code_capacity_fn(code: StabilizerCode) -> CapacityFn:
    return lambda f: code_capacity(code, depolarizing(f)).q_ss


def _scan_grid(bracket: tuple[float, float], step: float) -> list[float]:
    low, high = bracket
    if not 0.0 <= low < high <= 1.0:
        raise ValueError(f"Invalid fidelity bracket [{low}, {high}]")
    count = int(math.floor((high - low) / step + 1e-9))
    grid = [low + i * step for i in range(count + 1)]
    if grid[-1] < high:
        grid.append(high)
    return grid


def find_sign_changes(
    capacity_fn: CapacityFn,
    bracket: tuple[float, float] | None = None,
    step: float | None = None,
) -> list[tuple[float, float]]:
    """Scan the bracket and return every (f_lo, f_hi) cell where capacity changes sign, ascending.

    Zero counts as nonnegative, so a grid point with capacity exactly 0 closes a cell.
    """
    settings = get_settings()
    grid = _scan_grid(bracket or settings.threshold_bracket, step or settings.threshold_scan_step)
    with ThreadPoolExecutor(max_workers=settings.max_workers) as executor:
        values = list(executor.map(capacity_fn, grid))

    changes = [
        (grid[i], grid[i + 1]) for i in range(len(grid) - 1) if (values[i] < 0.0) != (values[i + 1] < 0.0)
    ]
    logger.debug("Pre-scan of %d points found %d sign changes", len(grid), len(changes))
    return changes


def find_thresholds(capacity_fn: CapacityFn, bracket: tuple[float, float] | None = None) -> list[float]:
    settings = get_settings()
    roots = [
        float(bisect(capacity_fn, low, high, xtol=settings.threshold_tolerance))
        for low, high in find_sign_changes(capacity_fn, bracket)
    ]
    if len(roots) > 1:
        logger.info("Capacity changes sign %d times in the bracket: %s", len(roots), roots)
    return roots


def threshold(capacity_fn: CapacityFn, bracket: tuple[float, float] | None = None) -> float:
    """Largest-f zero of the capacity in the bracket: positive capacity above it."""
    roots = find_thresholds(capacity_fn, bracket)
    if not roots:
        low, high = bracket or get_settings().threshold_bracket
        raise ValueError(f"Capacity has no sign change in [{low}, {high}]")
    return roots[-1]


def hashing_threshold() -> float:
    return threshold(hashing_capacity)
