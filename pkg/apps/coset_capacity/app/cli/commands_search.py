from __future__ import annotations

import argparse

from app.services.code_search import DEFAULT_TOP, search_codes
from app.services.self_check import run_checks


def cmd_search(args: argparse.Namespace) -> int:
    report = search_codes(args.n, args.trials, args.f, args.seed, top=args.top)
    print(f"n: {report.n}")
    print(f"trials: {report.trials}")
    print(f"f: {report.f}")
    print(f"seed: {report.seed}")
    print(f"cat_q_ss: {report.cat_q_ss:.12f}")
    print("rank,q_ss,label,generators,logical_x,logical_z")
    for rank, candidate in enumerate(report.top, start=1):
        print(
            f"{rank},{candidate.q_ss:.12f},{candidate.label},"
            f"{' '.join(candidate.generators)},{candidate.logical_x},{candidate.logical_z}"
        )
    print(f"codes_beating_cat: {len(report.beats_cat)}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_checks(full=args.full)
    for result in results:
        print(f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}")
    failed = [result for result in results if not result.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def register(subparsers: argparse._SubParsersAction) -> None:
    search = subparsers.add_parser("search", help="Monte-Carlo search over random [n,1] codes")
    search.add_argument("--n", type=int, required=True, help="Block size (<= 6)")
    search.add_argument("--trials", type=int, default=10000)
    search.add_argument("--f", type=float, required=True, help="Depolarizing fidelity")
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--top", type=int, default=DEFAULT_TOP)
    search.set_defaults(handler=cmd_search)

    verify = subparsers.add_parser("verify", help="Self-verification suite")
    mode = verify.add_mutually_exclusive_group()
    mode.add_argument("--quick", action="store_true", help="Small-block checks only (default)")
    mode.add_argument("--full", action="store_true", help="Add the threshold table and the double-cat scheme")
    verify.set_defaults(handler=cmd_verify)
