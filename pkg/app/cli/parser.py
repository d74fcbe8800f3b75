import argparse

from app.core.config import settings
from app.core.exceptions import CliUsageError
from app.literals.imaging import SystemKind


class CliArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting so the caller decides on output and exit code."""

    def error(self, message: str):
        raise CliUsageError(message)


def choices(enum) -> list[str]:
    return [member.value for member in enum]


def add_operator_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mask", required=True, help="Coded aperture as a one-band cube file")
    parser.add_argument("--system", required=True, choices=choices(SystemKind))
    parser.add_argument("--shift", type=int, default=settings.DISPERSION_SHIFT, help="Dispersion step in pixels")


def add_network_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--iters", type=int, default=settings.RECON_ITERATIONS)
    parser.add_argument("--lr", type=float, default=settings.RECON_LEARNING_RATE)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--log-every", type=int, default=settings.RECON_LOG_EVERY)
    parser.add_argument("--feature-width", type=int, default=settings.NETWORK_FEATURE_WIDTH)
    parser.add_argument("--z-channels", type=int, default=settings.NETWORK_Z_CHANNELS)


def build_parser() -> CliArgumentParser:
    from app.cli.commands import COMMANDS

    parser = CliArgumentParser(prog=settings.APP_NAME, description=settings.PROJECT_NAME)
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for command in COMMANDS:
        command.register(subparsers)
    return parser
