from __future__ import annotations

import argparse

from app.cli import commands_capacity, commands_concat, commands_search


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosetcap",
        description="Capacities and thresholds of degenerate stabilizer codes on Pauli channels.",
    )
    parser.add_argument("--log-level", help="Override COSETCAP_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    commands_capacity.register(subparsers)
    commands_concat.register(subparsers)
    commands_search.register(subparsers)
    return parser
