import argparse

from tspread.commands.spec_args import add_spec_arguments, spec_from_args
from tspread.integrations.macaulay2 import M2Outcome, run_script, write_script


def register(subparsers):
    parser = subparsers.add_parser("export-m2", help="write a self-checking Macaulay2 script")
    parser.add_argument("path", help="where to write the .m2 script")
    add_spec_arguments(parser)
    parser.add_argument("--run", action="store_true", help="run the script with Macaulay2 afterwards")
    parser.set_defaults(handler=cmd_export_m2)


def cmd_export_m2(args: argparse.Namespace) -> int:
    spec = spec_from_args(args)
    path = write_script(spec, args.path)
    print(f"wrote {path}")
    if not args.run:
        return 0
    outcome = run_script(path)
    if outcome == M2Outcome.PASSED:
        print("Macaulay2: all assertions passed")
    elif outcome == M2Outcome.UNAVAILABLE:
        print("Macaulay2: not confirmed (binary missing; see log)")
    else:
        print("Macaulay2: FAILED (an assertion failed or the run timed out; see log)")
        return 1
    return 0
