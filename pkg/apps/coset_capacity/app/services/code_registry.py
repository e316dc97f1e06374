from __future__ import annotations

import json
import logging
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

from app.core.config import get_settings
from app.schemas.codes import CodeDescription
from app.services.capacity import CapacityFn, code_capacity_fn, hashing_capacity
from app.services.cat_analytic import cat_code, cat_qss, rotated_cat_code
from app.services.channel import PauliChannel, depolarizing, pauli_channel
from app.services.pauli_algebra import StabilizerCode, build_code, pauli_to_string

logger = logging.getLogger(__name__)

_CODE_FAMILIES: dict[str, Callable[[int], StabilizerCode]] = {
    "cat": cat_code,
    "rotcat": rotated_cat_code,
}

_FAMILY_DESCRIPTIONS: dict[str, str] = {
    "cat": "Cat code: generators Z1Zj, logical X on every qubit, logical Z on qubit 1",
    "rotcat": "Rotated cat code: generators X1Xj, logical X on qubit 1, logical Z on every qubit",
}


@dataclass(frozen=True)
class Scheme:
    label: str
    capacity_fn: CapacityFn
    qubits: int


def list_code_families() -> list[dict[str, str]]:
    return [
        {"id": family, "description": _FAMILY_DESCRIPTIONS.get(family, "Code family")}
        for family in sorted(_CODE_FAMILIES)
    ]


def get_code_factory(family: str) -> Callable[[int], StabilizerCode]:
    if family not in _CODE_FAMILIES:
        raise ValueError(f"Unknown code family: {family}")
    return _CODE_FAMILIES[family]


def code_from_document(doc: CodeDescription) -> StabilizerCode:
    return build_code(doc.n, doc.generators, doc.logical_x, doc.logical_z, name=doc.name)


def code_to_document(code: StabilizerCode) -> CodeDescription:
    return CodeDescription(
        n=code.n,
        generators=[pauli_to_string(g) for g in code.generators],
        logical_x=pauli_to_string(code.logical_x),
        logical_z=pauli_to_string(code.logical_z),
        name=code.name,
    )


def load_code_file(path: str | Path) -> StabilizerCode:
    source = Path(path)
    if not source.is_file():
        raise ValueError(f"Code file not found: {source}")
    doc = CodeDescription.model_validate_json(source.read_text(encoding="utf-8"))
    if doc.name is None:
        doc = doc.model_copy(update={"name": f"file:{source.name}"})
    logger.debug("Loaded code description n=%d from %s", doc.n, source)
    return code_from_document(doc)


def save_code_file(code: StabilizerCode, path: str | Path) -> None:
    payload = code_to_document(code).model_dump(exclude_none=True)
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _split_spec(text: str) -> tuple[str, str]:
    family, sep, argument = text.strip().partition(":")
    if not sep or not argument:
        raise ValueError(f"Invalid code spec {text!r}; expected cat:<p>, rotcat:<p> or file:<path>")
    return family, argument


def _block_size(argument: str, text: str) -> int:
    try:
        return int(argument)
    except ValueError as exc:
        raise ValueError(f"Invalid block size in {text!r}") from exc


def parse_code_spec(text: str) -> StabilizerCode:
    family, argument = _split_spec(text)
    if family == "file":
        return load_code_file(argument)
    return get_code_factory(family)(_block_size(argument, text))


def parse_scheme(text: str) -> Scheme:
    """Resolve a sweep/threshold scheme to its capacity as a function of fidelity.

    Cat and rotated-cat schemes use the closed form and work beyond the enumeration cap.
    """
    label = text.strip()
    if label == "hashing":
        return Scheme(label=label, capacity_fn=hashing_capacity, qubits=1)

    code = parse_code_spec(label)
    if code.family.has_closed_form:
        p = code.n
        return Scheme(label=label, capacity_fn=lambda f: cat_qss(p, f).q_ss, qubits=p)
    return Scheme(label=label, capacity_fn=code_capacity_fn(code), qubits=code.n)


def parse_channel(f: float | None = None, probs: str | None = None) -> PauliChannel:
    if (f is None) == (probs is None):
        raise ValueError("Exactly one of --f or --probs must be given")
    if f is not None:
        return depolarizing(f)

    assert probs is not None
    parts = [part.strip() for part in probs.split(",")]
    if len(parts) != 4:
        raise ValueError(f"--probs needs four comma-separated values p_I,p_X,p_Y,p_Z, got {probs!r}")
    try:
        p_i, p_x, p_y, p_z = (float(part) for part in parts)
    except ValueError as exc:
        raise ValueError(f"Invalid probability in {probs!r}") from exc
    return pauli_channel(p_i, p_x, p_y, p_z)


def parse_bracket(text: str | None) -> tuple[float, float]:
    if text is None:
        return get_settings().threshold_bracket
    low_text, sep, high_text = text.partition(":")
    try:
        low, high = float(low_text), float(high_text)
    except ValueError as exc:
        raise ValueError(f"Invalid bracket {text!r}; expected lo:hi") from exc
    if not sep or not 0.0 <= low < high <= 1.0:
        raise ValueError(f"Invalid bracket {text!r}; expected 0 <= lo < hi <= 1")
    return low, high


def parse_grid(text: str) -> list[float]:
    """Fidelity grid from ``lo:hi:step``, both endpoints included."""
    pieces = text.split(":")
    if len(pieces) != 3:
        raise ValueError(f"Invalid grid {text!r}; expected lo:hi:step")
    try:
        low, high, step = (float(piece) for piece in pieces)
    except ValueError as exc:
        raise ValueError(f"Invalid grid {text!r}; expected lo:hi:step") from exc
    if not 0.0 <= low < high <= 1.0:
        raise ValueError(f"Invalid grid {text!r}; expected 0 <= lo < hi <= 1")
    if step <= 0.0:
        raise ValueError(f"Grid step must be positive, got {step}")

    count = int((high - low) / step + 1e-9)
    grid = [round(low + i * step, 12) for i in range(count + 1)]
    if high - grid[-1] > 1e-12:
        grid.append(high)
    return grid
