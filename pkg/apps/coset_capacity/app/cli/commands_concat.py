from __future__ import annotations

import argparse

from app.services.code_registry import parse_bracket, parse_channel, parse_code_spec
from app.services.concatenator import concatenated_ensemble, concatenated_threshold, ensemble_result


def cmd_concat(args: argparse.Namespace) -> int:
    levels = [parse_code_spec(text) for text in args.level]
    print("levels: " + " > ".join(code.label for code in levels))

    if args.threshold:
        if args.f is not None or args.probs is not None:
            raise ValueError("--threshold cannot be combined with --f or --probs")
        value = concatenated_threshold(levels, parse_bracket(args.bracket))
        print(f"threshold: {value:.6f}")
        return 0

    channel = parse_channel(args.f, args.probs)
    ensemble = concatenated_ensemble(levels, channel)
    result = ensemble_result(ensemble)
    print(f"qubits: {result.p}")
    print(f"outcomes: {len(ensemble)}")
    print(f"q_ss: {result.q_ss:.6f}")
    print(f"s_x2: {result.s_x2:.6f}")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    concat = subparsers.add_parser("concat", help="Capacity of a concatenation stack, innermost level first")
    concat.add_argument(
        "--level",
        action="append",
        required=True,
        help="Code of one level: cat:<p>, rotcat:<p> or file:<path.json>. Repeatable, innermost first.",
    )
    concat.add_argument("--f", type=float, help="Depolarizing fidelity")
    concat.add_argument("--probs", help="General Pauli channel p_I,p_X,p_Y,p_Z")
    concat.add_argument("--threshold", action="store_true", help="Search the threshold fidelity instead")
    concat.add_argument("--bracket", help="Threshold search bracket lo:hi")
    concat.set_defaults(handler=cmd_concat)
