"""
Shared flags: a lexsegment spec on the command line, output format, and the
sweep box used by `verify` and `conjecture-scan`.
"""

import argparse
from pathlib import Path

from pydantic import BaseModel

from tspread.errors import ContractViolation
from tspread.modules.lexseg_model import LexsegmentSpec, SegmentKind
from tspread.modules.monomial_core import SquarefreeMonomial, max_monomial, min_monomial
from tspread.schemas import SpecPayload, SweepConfig


def index_list(raw: str) -> list[int]:
    """'1,4,6' -> [1, 4, 6]"""
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {raw!r}")


def kind_list(raw: str) -> list[SegmentKind]:
    try:
        return [SegmentKind(part.strip()) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"kinds are initial, final, arbitrary; got {raw!r}")


# -----------------------------------------------------------
#                SPEC FLAGS
# -----------------------------------------------------------

def add_spec_arguments(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("lexsegment")
    group.add_argument("-n", type=int, help="number of variables")
    group.add_argument("-d", type=int, help="degree")
    group.add_argument("-t", type=int, default=1, help="spread (default 1)")
    group.add_argument("-u", type=index_list, help="left endpoint, e.g. 1,4,6 (default: slex maximum)")
    group.add_argument("-v", type=index_list, help="right endpoint, e.g. 2,5,7 (default: slex minimum)")
    group.add_argument("--kind", choices=[k.value for k in SegmentKind],
                       help="initial, final or arbitrary (default: read off the endpoints)")
    group.add_argument("--spec-file", help="JSON file holding a spec instead of the flags above")


def spec_from_args(args: argparse.Namespace) -> LexsegmentSpec:
    if args.spec_file:
        return SpecPayload.model_validate_json(Path(args.spec_file).read_text(encoding="utf-8")).to_spec()
    if args.n is None or args.d is None:
        raise ContractViolation("a spec needs -n and -d (or --spec-file)")
    n, d, t = args.n, args.d, args.t
    u = SquarefreeMonomial.from_indices(args.u, n) if args.u else max_monomial(n, d, t)
    v = SquarefreeMonomial.from_indices(args.v, n) if args.v else min_monomial(n, d, t)
    if args.kind is None:
        return LexsegmentSpec.from_endpoints(n, d, t, u, v)
    return LexsegmentSpec(n, d, t, u, v, SegmentKind(args.kind))


def add_format_argument(parser: argparse.ArgumentParser, default: str = "text"):
    parser.add_argument("-f", "--format", choices=["text", "json"], default=default)


def emit(args: argparse.Namespace, payload: BaseModel, text: str):
    if args.format == "json":
        print(payload.model_dump_json(indent=2))
    else:
        print(text)


# -----------------------------------------------------------
#                SWEEP FLAGS
# -----------------------------------------------------------

def add_sweep_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="JSON file holding a SweepConfig")
    for name in ("n", "d", "t"):
        parser.add_argument(f"--{name}-min", type=int, dest=f"{name}_min")
        parser.add_argument(f"--{name}-max", type=int, dest=f"{name}_max")
    parser.add_argument("--kinds", type=kind_list, help="comma-separated subset of initial,final,arbitrary")
    parser.add_argument("--workers", type=int, help="process pool width (default TSPREAD_SWEEP_WORKERS)")
    parser.add_argument("-o", "--output", help="JSON-lines report path (default stdout)")
    parser.add_argument("-q", "--quiet", action="store_true", help="no progress bar")


def sweep_config_from_args(args: argparse.Namespace, **overrides) -> SweepConfig:
    fields = {}
    if args.config:
        fields = SweepConfig.model_validate_json(Path(args.config).read_text(encoding="utf-8")).model_dump()
    for name in ("n_min", "n_max", "d_min", "d_max", "t_min", "t_max", "kinds", "workers", "output"):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    fields.update(overrides)
    return SweepConfig(**fields)
