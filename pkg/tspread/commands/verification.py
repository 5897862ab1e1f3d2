"""
verify: exhaustive sweep of every lexsegment spec in a box against the oracle.
Records stream as JSON lines; the summary goes to stderr.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, TextIO

from tspread.commands.spec_args import add_sweep_arguments, sweep_config_from_args
from tspread.modules.processor import (
    FAIL,
    PASS,
    SKIP,
    format_summary,
    run_sweep,
    specs_for,
    summarize,
    verify_worker,
)
from tspread.schemas import SweepConfig, SweepRecord

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("verify", help="check closed forms against the oracle over a box of specs")
    add_sweep_arguments(parser)
    parser.add_argument("--no-oracle", action="store_true",
                        help="only run the internal checks (membership, classification dispatch)")
    parser.set_defaults(handler=cmd_verify)


@dataclass
class SweepTally:
    total: int = 0
    failed: int = 0
    summary: dict[str, dict[str, int]] = field(default_factory=dict)

    def count(self, record: SweepRecord):
        self.total += 1
        self.failed += int(record.failed)
        for name, row in summarize([record]).items():
            mine = self.summary.setdefault(name, {PASS: 0, FAIL: 0, SKIP: 0})
            for outcome, hits in row.items():
                mine[outcome] = mine.get(outcome, 0) + hits


def stream_records(records: Iterable[SweepRecord], output: str | None,
                   on_record: Callable[[SweepRecord], None] | None = None) -> SweepTally:
    """Write one JSON line per record, flushing as they arrive; only the tally is kept."""
    handle: TextIO = open(output, "w", encoding="utf-8") if output else sys.stdout
    tally = SweepTally()
    try:
        for record in records:
            handle.write(record.model_dump_json() + "\n")
            handle.flush()
            if on_record:
                on_record(record)
            tally.count(record)
    finally:
        if output:
            handle.close()
    return tally


def show_progress(args: argparse.Namespace) -> bool:
    return not args.quiet and sys.stderr.isatty()


def run_configured(config: SweepConfig, worker, args: argparse.Namespace,
                   on_record: Callable[[SweepRecord], None] | None = None) -> SweepTally:
    specs = specs_for(config)
    logger.info("sweep over %d specs with %d worker(s)", len(specs), config.workers)
    records = run_sweep(specs, worker, config.workers, progress=show_progress(args))
    tally = stream_records(records, config.output, on_record)
    print(format_summary(tally.summary), file=sys.stderr)
    return tally


def cmd_verify(args: argparse.Namespace) -> int:
    overrides = {"oracle": False} if args.no_oracle else {}
    config = sweep_config_from_args(args, **overrides)
    tally = run_configured(config, verify_worker(config), args)
    if tally.failed:
        print(f"{tally.failed} of {tally.total} specs mismatched", file=sys.stderr)
        return 1
    print(f"{tally.total} specs, 0 mismatches", file=sys.stderr)
    return 0
