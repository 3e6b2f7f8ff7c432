import argparse
import sys

from goformer import configure, __version__
from goformer.commands import ALL_COMMANDS


def build_parser():
    parser = argparse.ArgumentParser(prog="goformer",
                                     description="Computer-Go network workbench")
    parser.add_argument("--config", type=str, help="location of config.json file")
    parser.add_argument("--version", action="version", version=f"goformer {__version__}")
    subparsers = parser.add_subparsers(title="commands", dest="command_name", required=True)
    for command in ALL_COMMANDS:
        command(subparsers)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    configure(argv)
    args = build_parser().parse_args(argv)
    args.command(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
