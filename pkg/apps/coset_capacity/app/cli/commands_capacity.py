from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from app.core.config import get_settings
from app.services.capacity import CapacityResult, coherent_information, find_thresholds, q_ss
from app.services.cat_analytic import REFERENCE_THRESHOLDS, asymptotic_threshold, cat_qss, cat_threshold_table
from app.services.channel import uniform_assignment
from app.services.code_registry import parse_bracket, parse_channel, parse_code_spec, parse_grid, parse_scheme
from app.services.coset_enumerator import coset_summary, joint_distribution, write_table_csv
from app.services.pauli_algebra import StabilizerCode, min_distance, pauli_to_string

logger = logging.getLogger(__name__)

# rows the "Best" marker is chosen from
PUBLISHED_TABLE_ROWS = 14


def _print_code(code: StabilizerCode) -> None:
    print(f"code: {code.label}")
    print(f"n: {code.n}")
    print("generators: " + " ".join(pauli_to_string(g) for g in code.generators))
    print(f"logical_x: {pauli_to_string(code.logical_x)}")
    print(f"logical_z: {pauli_to_string(code.logical_z)}")


def _print_result(result: CapacityResult) -> None:
    print(f"q_ss: {result.q_ss:.6f}")
    print(f"s_x2: {result.s_x2:.6f}")
    if result.h_syndrome is not None:
        print(f"h_syndrome: {result.h_syndrome:.6f}")
    if result.h_joint is not None:
        print(f"h_joint: {result.h_joint:.6f}")


def cmd_qss(args: argparse.Namespace) -> int:
    channel = parse_channel(args.f, args.probs)
    code = parse_code_spec(args.code)
    _print_code(code)

    if code.n > get_settings().enumeration_cap and code.family.has_closed_form and args.f is not None:
        print("method: closed_form")
        _print_result(cat_qss(code.n, args.f))
        return 0

    dist = joint_distribution(code, uniform_assignment(channel, code.n))
    result = q_ss(dist, code.n)
    coherent = coherent_information(dist, code.n)
    summary = coset_summary(dist)

    print("method: enumeration")
    print(f"distance: {min_distance(code)}")
    _print_result(result)
    print(f"coherent_information: {coherent:.6f}")
    print(f"identity_residual: {abs(result.q_ss - coherent):.3e}")
    print(f"p_no_error: {summary.p_no_error:.6f}")
    print(f"p_undetected_logical: {summary.p_undetected_logical:.6f}")
    print(f"p_no_detection: {summary.p_no_detection:.6f}")

    if args.csv:
        with Path(args.csv).open("w", encoding="utf-8", newline="") as stream:
            write_table_csv(dist, stream)
        logger.info("Wrote %d-row joint table to %s", dist.rows, args.csv)
    return 0


def cmd_threshold(args: argparse.Namespace) -> int:
    scheme = parse_scheme(args.code)
    bracket = parse_bracket(args.bracket)
    roots = find_thresholds(scheme.capacity_fn, bracket)
    if not roots:
        raise ValueError(f"Capacity of {scheme.label} has no sign change in [{bracket[0]}, {bracket[1]}]")
    print(f"scheme: {scheme.label}")
    for root in roots:
        print(f"root: {root:.6f}")
    print(f"threshold: {roots[-1]:.6f}")
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    table = cat_threshold_table(args.p_max)
    published = [value for p, value in table if p <= PUBLISHED_TABLE_ROWS]
    best = min(published)
    print("p,threshold,reference,note")
    for p, value in table:
        reference = REFERENCE_THRESHOLDS.get(p)
        reference_text = f"{reference:.5f}" if reference is not None else ""
        note = "Best" if p <= PUBLISHED_TABLE_ROWS and value == best else ""
        print(f"{p},{value:.6f},{reference_text},{note}")
    print(f"inf,{asymptotic_threshold():.6f},{REFERENCE_THRESHOLDS[None]:.5f},")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    schemes = [parse_scheme(text) for text in args.schemes.split(",") if text.strip()]
    if not schemes:
        raise ValueError("--schemes needs at least one scheme")
    grid = parse_grid(args.f)

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["f", *(scheme.label for scheme in schemes)])
    for f in grid:
        writer.writerow([f"{f:.6f}", *(f"{scheme.capacity_fn(f):.6g}" for scheme in schemes)])
    return 0


def _add_channel_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--f", type=float, help="Depolarizing fidelity")
    group.add_argument("--probs", help="General Pauli channel p_I,p_X,p_Y,p_Z")


def register(subparsers: argparse._SubParsersAction) -> None:
    qss = subparsers.add_parser("qss", help="Q_SS, coherent information and coset readings of one code")
    qss.add_argument("--code", required=True, help="cat:<p>, rotcat:<p> or file:<path.json>")
    _add_channel_arguments(qss)
    qss.add_argument("--csv", help="Write the joint syndrome/Bell table to this CSV file")
    qss.set_defaults(handler=cmd_qss)

    threshold = subparsers.add_parser("threshold", help="Fidelity where the capacity of a scheme crosses zero")
    threshold.add_argument("--code", required=True, help="hashing, cat:<p>, rotcat:<p> or file:<path.json>")
    threshold.add_argument("--bracket", help="Search bracket lo:hi (default from settings)")
    threshold.set_defaults(handler=cmd_threshold)

    table = subparsers.add_parser("table", help="Cat-code threshold table")
    table.add_argument("--p-max", type=int, default=PUBLISHED_TABLE_ROWS, help="Largest block size (<= 30)")
    table.set_defaults(handler=cmd_table)

    sweep = subparsers.add_parser("sweep", help="CSV of capacities over a fidelity grid")
    sweep.add_argument("--schemes", required=True, help="Comma-separated schemes, e.g. hashing,cat:1,cat:5")
    sweep.add_argument("--f", required=True, help="Fidelity grid lo:hi:step")
    sweep.set_defaults(handler=cmd_sweep)
