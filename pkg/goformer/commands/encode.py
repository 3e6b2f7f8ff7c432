from goformer.commands.command import Command
from goformer.features import write_records
from goformer.harness import ingest_sgf


class Encode(Command):
    """Replays SGF games and writes their positions as GOTR records."""
    name = "encode"
    help = "encode SGF games into GOTR records"

    def add_arguments(self, parser):
        parser.add_argument("--sgf", required=True, nargs="+", help="SGF files or directories")
        parser.add_argument("--out", required=True, help="GOTR file")

    def __call__(self, args):
        count = write_records(args.out, ingest_sgf(args.sgf))
        print(f"{count} records written to {args.out}")
