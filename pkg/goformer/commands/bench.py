import os

from goformer.commands.command import Command, csv_list
from goformer.harness import benchmark, BenchConfig, bench_rows, format_table, write_csv, \
    BENCH_COLUMNS
from goformer.models import build


class Bench(Command):
    """Forward-pass latency and throughput of networks over batch sizes."""
    name = "bench"
    help = "benchmark forward latency and throughput"

    def add_arguments(self, parser):
        parser.add_argument("--arch", required=True, type=csv_list(str),
                            help="comma separated architecture descriptors")
        parser.add_argument("--batch", type=csv_list(int), default=[32, 64, 128, 256, 512, 1024])
        parser.add_argument("--warmup", type=int)
        parser.add_argument("--calls", type=int)
        parser.add_argument("--runs", type=int)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--report", help="CSV file; an aligned .txt table is written next to it")

    def __call__(self, args):
        cfg = BenchConfig.from_config(warmup=args.warmup, calls=args.calls, runs=args.runs)
        nets = [build(descriptor, seed=args.seed) for descriptor in args.arch]
        rows = bench_rows(benchmark(nets, args.batch, cfg, seed=args.seed))
        table = format_table(BENCH_COLUMNS, rows)
        if args.report:
            write_csv(args.report, BENCH_COLUMNS, rows)
            with open(os.path.splitext(args.report)[0] + ".txt", "w") as fp:
                fp.write(table + "\n")
        print(table)
