import sys
from typing import Optional, Sequence

from app.cli.parser import build_parser
from app.core.config import settings
from app.core.exceptions import CliUsageError
from app.core.logger import logger


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the chosen subcommand and return its exit code."""
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except CliUsageError as e:
        print(f"{settings.APP_NAME}: error: {e}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        # --help and --version exit through argparse directly
        return int(e.code or 0)

    logger.debug("Running command", extra={"command": namespace.command})
    return namespace.handler(namespace)


def run() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    run()
