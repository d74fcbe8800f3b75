import argparse
import sys
from functools import wraps
from typing import Callable

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import CassiError
from app.core.logger import logger

Command = Callable[[argparse.Namespace], int]


def _report(command: str, message: str) -> None:
    print(f"{settings.APP_NAME} {command}: error: {message}", file=sys.stderr)


def _first_validation_message(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    flag = f"--{location.replace('_', '-')}: " if location else ""
    return f"{flag}{first.get('msg', 'invalid value')}"


def handle_cli_errors(command: str) -> Callable[[Command], Command]:
    """
    Decorator factory mapping failures of a subcommand to an exit code.
    Every failure prints a single diagnostic line on stderr.
    """

    def decorator(func: Command) -> Command:
        @wraps(func)
        def wrapper(namespace: argparse.Namespace) -> int:
            try:
                return func(namespace)
            except CassiError as e:
                logger.error(str(e), extra={"command": command, "error": type(e).__name__})
                _report(command, str(e))
                return e.exit_code
            except ValidationError as e:
                _report(command, _first_validation_message(e))
                return 2
            except OSError as e:
                logger.error(str(e), extra={"command": command, "error": type(e).__name__})
                _report(command, str(e))
                return 1
            except Exception as e:
                logger.exception(e)
                _report(command, "internal error, see log for details")
                return 1

        return wrapper

    return decorator
