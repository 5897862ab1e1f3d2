"""
Command-line entry point for tspread.
Collects the command groups, configures logging once, and turns library
errors into a one-line message and an exit code.
"""

import argparse
import logging
import sys

from pydantic import ValidationError

from tspread import __version__
from tspread.commands import classification, conjecture, decomposition, enumeration, export, verification
from tspread.config import settings
from tspread.errors import InternalInconsistency, TSpreadError

logger = logging.getLogger("tspread")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

COMMAND_GROUPS = (enumeration, decomposition, classification, verification, conjecture, export)

# -----------------------------------------------------------
#                PARSER
# -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tspread",
                                     description="t-spread lexsegment ideals: decompositions, Betti numbers, "
                                                 "Cohen-Macaulay classification and oracle sweeps")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help=f"DEBUG, INFO, WARNING or ERROR (default {settings.LOG_LEVEL})")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for group in COMMAND_GROUPS:
        group.register(subparsers)
    return parser

# -----------------------------------------------------------
#                LOGGING
# -----------------------------------------------------------

def configure_logging(level: str):
    logging.basicConfig(level=level.upper(), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level.upper())

# -----------------------------------------------------------
#                GLOBAL ERROR HANDLER
# -----------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or settings.LOG_LEVEL)
    try:
        return args.handler(args) or EXIT_OK
    except InternalInconsistency as e:
        logger.exception("internal inconsistency")
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValidationError as e:
        print(f"invalid input: {e.errors()[0].get('msg', e)}", file=sys.stderr)
        return EXIT_USAGE
    except TSpreadError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
