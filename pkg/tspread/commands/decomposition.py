import argparse
import logging

from tspread.commands.spec_args import add_format_argument, add_spec_arguments, emit, spec_from_args
from tspread.modules.lexseg_model import build_segment
from tspread.modules.oracle import minimal_primes_bruteforce
from tspread.modules.primary_decomp import decompose
from tspread.schemas import DecompositionPayload

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("decompose", help="standard primary decomposition with provenance")
    add_spec_arguments(parser)
    add_format_argument(parser)
    parser.add_argument("--verify", action="store_true", help="compare with the brute-force minimal primes")
    parser.set_defaults(handler=cmd_decompose)


def cmd_decompose(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    found = decompose(spec)
    payload = DecompositionPayload.build(spec, found)

    lines = [spec.describe()]
    lines += [f"  {prime}  [{tag.value}]" for prime, tag in zip(found.primes, found.provenance)]
    for key, value in found.notes.items():
        lines.append(f"  {key}: {value}")

    status = 0
    if args.verify:
        truth = minimal_primes_bruteforce(build_segment(spec))
        payload.verified = truth.supports == found.supports
        if payload.verified:
            lines.append("MATCH")
        else:
            lines.append("MISMATCH")
            lines.append(f"  oracle: {truth}")
            logger.warning("%s: decomposition differs from the oracle", spec.describe())
            status = 1

    emit(args, payload, "\n".join(lines))
    return status
