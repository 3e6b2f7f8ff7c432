import os

from goformer.commands.command import Command, csv_list
from goformer.harness import parameter_rows, format_table, write_csv, PARAMETER_COLUMNS
from goformer.models import PUBLISHED_PARAMETER_COUNTS, build, report_breakdown


class Params(Command):
    """Parameter counts next to the published figures, with per-layer breakdowns."""
    name = "params"
    help = "report parameter counts"

    def add_arguments(self, parser):
        parser.add_argument("--arch", type=csv_list(str), default=list(PUBLISHED_PARAMETER_COUNTS),
                            help="comma separated architecture descriptors")
        parser.add_argument("--breakdown", action="store_true", help="log per-layer counts")
        parser.add_argument("--report", help="CSV file; an aligned .txt table is written next to it")

    def __call__(self, args):
        rows = parameter_rows(args.arch)
        if args.breakdown:
            for descriptor in args.arch:
                report_breakdown(build(descriptor))
        table = format_table(PARAMETER_COLUMNS, rows)
        if args.report:
            write_csv(args.report, PARAMETER_COLUMNS, rows)
            with open(os.path.splitext(args.report)[0] + ".txt", "w") as fp:
                fp.write(table + "\n")
        print(table)
