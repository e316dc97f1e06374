from __future__ import annotations

import logging
import sys
from collections.abc import Sequence

from app.cli.router import build_parser
from app.core.config import get_settings
from app.core.logging_config import configure_logging

logger = logging.getLogger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    configure_logging(args.log_level or settings.log_level)

    try:
        return args.handler(args)
    except ValueError as exc:
        # pydantic's ValidationError is a ValueError too
        print(f"[error] {exc}", file=sys.stderr)
        return 2
    except Exception:
        logger.exception("Command %s failed", args.command)
        return 1


if __name__ == "__main__":
    sys.exit(main())
