"""Monte-Carlo search over random [n, 1] stabilizer codes.

Trial seeds are drawn up front from one generator, so the report depends only
on (n, trials, f, seed) and not on how trials are scheduled.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from app.core.config import get_settings
from app.services.capacity import code_capacity
from app.services.cat_analytic import cat_qss
from app.services.channel import depolarizing
from app.services.pauli_algebra import pauli_to_string, random_stabilizer_code

logger = logging.getLogger(__name__)

MAX_SEARCH_QUBITS = 6
DEFAULT_TOP = 10
# a sampled code must beat the cat code by more than rounding to count
BEAT_MARGIN = 1e-12


@dataclass(frozen=True)
class SearchCandidate:
    label: str
    q_ss: float
    generators: tuple[str, ...]
    logical_x: str
    logical_z: str


@dataclass(frozen=True)
class SearchReport:
    n: int
    trials: int
    f: float
    seed: int
    cat_q_ss: float
    top: tuple[SearchCandidate, ...]
    beats_cat: tuple[SearchCandidate, ...]

    @property
    def cat_unbeaten(self) -> bool:
        return not self.beats_cat


def _evaluate(n: int, trial_seed: int, f: float) -> SearchCandidate:
    code = random_stabilizer_code(n, trial_seed)
    result = code_capacity(code, depolarizing(f))
    return SearchCandidate(
        label=code.label,
        q_ss=result.q_ss,
        generators=tuple(pauli_to_string(g) for g in code.generators),
        logical_x=pauli_to_string(code.logical_x),
        logical_z=pauli_to_string(code.logical_z),
    )


def search_codes(n: int, trials: int, f: float, seed: int, top: int = DEFAULT_TOP) -> SearchReport:
    if not 1 <= n <= MAX_SEARCH_QUBITS:
        raise ValueError(f"Search supports 1..{MAX_SEARCH_QUBITS} qubits, got n={n}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if top < 1:
        raise ValueError("top must be at least 1")
    depolarizing(f)  # validates f

    settings = get_settings()
    trial_seeds = np.random.default_rng(seed).integers(0, 2**63 - 1, size=trials).tolist()
    logger.info("Searching %d random [%d,1] codes at f=%s (seed %d)", trials, n, f, seed)
    with ThreadPoolExecutor(max_workers=settings.max_workers) as executor:
        candidates = list(executor.map(lambda trial_seed: _evaluate(n, trial_seed, f), trial_seeds))

    reference = cat_qss(n, f).q_ss
    ranked = sorted(candidates, key=lambda candidate: (-candidate.q_ss, candidate.label))
    beats = tuple(candidate for candidate in ranked if candidate.q_ss > reference + BEAT_MARGIN)
    if beats:
        logger.warning(
            "%d sampled codes beat cat(%d) at f=%s; best q_ss %.12f vs %.12f",
            len(beats),
            n,
            f,
            beats[0].q_ss,
            reference,
        )
    else:
        logger.info("No sampled [%d,1] code beats cat(%d) at f=%s", n, n, f)

    return SearchReport(
        n=n,
        trials=trials,
        f=f,
        seed=seed,
        cat_q_ss=reference,
        top=tuple(ranked[:top]),
        beats_cat=beats,
    )
