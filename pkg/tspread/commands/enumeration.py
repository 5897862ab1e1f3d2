import argparse

from pydantic import TypeAdapter

from tspread.commands.spec_args import add_format_argument
from tspread.modules.monomial_core import enumerate_M

INDEX_ARRAYS = TypeAdapter(list[list[int]])


def register(subparsers):
    parser = subparsers.add_parser("enumerate", help="list M_{n,d,t} in slex-descending order")
    parser.add_argument("-n", type=int, required=True)
    parser.add_argument("-d", type=int, required=True)
    parser.add_argument("-t", type=int, default=1)
    add_format_argument(parser)
    parser.set_defaults(handler=cmd_enumerate)


def cmd_enumerate(args: argparse.Namespace) -> int:
    monomials = enumerate_M(args.n, args.d, args.t)
    if args.format == "json":
        print(INDEX_ARRAYS.dump_json([m.to_json() for m in monomials]).decode())
        return 0
    print(f"|M_{{{args.n},{args.d},{args.t}}}| = {len(monomials)}")
    for m in monomials:
        print(m)
    return 0
