"""
classify, invariants and betti: the homological view of a single spec.
"""

import argparse
import logging

from tspread.commands.spec_args import add_format_argument, add_spec_arguments, emit, spec_from_args
from tspread.config import settings
from tspread.errors import PreconditionError
from tspread.modules.cm_classifier import classify
from tspread.modules.homological import betti_for_spec, invariants_for_spec
from tspread.modules.lexseg_model import build_segment
from tspread.modules.oracle import hochster_betti
from tspread.schemas import BettiPayload, InvariantPayload, VerdictPayload

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("classify", help="Cohen-Macaulay verdict with branch and witness")
    add_spec_arguments(parser)
    add_format_argument(parser, default="json")
    parser.set_defaults(handler=cmd_classify)

    parser = subparsers.add_parser("invariants", help="pd, depth, dim and height with their sources")
    add_spec_arguments(parser)
    add_format_argument(parser, default="json")
    parser.add_argument("--no-oracle", action="store_true", help="fail instead of falling back to the oracle")
    parser.set_defaults(handler=cmd_invariants)

    parser = subparsers.add_parser("betti", help="graded Betti table of the ideal")
    add_spec_arguments(parser)
    add_format_argument(parser)
    parser.add_argument("--verify", action="store_true", help="compare with Hochster's formula")
    parser.set_defaults(handler=cmd_betti)


def cmd_classify(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    verdict = classify(spec)
    payload = VerdictPayload.build(verdict)
    text = f"{spec.describe()}\n  Cohen-Macaulay: {'yes' if verdict.is_cm else 'no'} ({verdict.branch.value})"
    for key, value in verdict.witness.items():
        text += f"\n  {key}: {value}"
    emit(args, payload, text)
    return 0


def cmd_invariants(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    report = invariants_for_spec(spec, allow_oracle=not args.no_oracle)
    payload = InvariantPayload.build(spec, report)
    text = "\n".join([
        spec.describe(),
        f"  pd(S/I)  = {report.pd_SmodI}  [{report.source.get('pd')}]",
        f"  depth    = {report.depth_SmodI}  [{report.source.get('depth')}]",
        f"  dim      = {report.dim_SmodI}  [{report.source.get('dim')}]",
        f"  height   = {report.height}  [{report.source.get('height')}]",
        f"  CM       = {'yes' if report.is_cm else 'no'}",
    ])
    emit(args, payload, text)
    return 0


def cmd_betti(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    found = betti_for_spec(spec)
    if found is None:
        if spec.n > settings.HOCHSTER_CAP:
            raise PreconditionError(f"no Betti formula for {spec.describe()} and n is above the Hochster cap")
        table, source = hochster_betti(build_segment(spec)), "oracle"
    else:
        table, source = found
    payload = BettiPayload.build(spec, table, source)

    lines = [spec.describe(), f"source: {source}", str(table)]
    status = 0
    if args.verify and source != "oracle":
        truth = hochster_betti(build_segment(spec))
        payload.verified = truth == table
        if payload.verified:
            lines.append("MATCH")
        else:
            lines += ["MISMATCH", "oracle:", str(truth)]
            logger.warning("%s: %s table differs from Hochster", spec.describe(), source)
            status = 1
    elif args.verify:
        payload.verified = True
        lines.append("MATCH (table came from the oracle)")

    emit(args, payload, "\n".join(lines))
    return status
