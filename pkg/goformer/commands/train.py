import os

from goformer.commands.command import Command, csv_list
from goformer.harness import load_dataset, train, lr_sweep, TrainingConfig, format_table, \
    write_csv, TRAINING_COLUMNS
from goformer.models import build, save_checkpoint
from goformer.utils import make_run_dir


class Train(Command):
    """Trains a freshly built network on GOTR records, or sweeps learning rates."""
    name = "train"
    help = "train a network on GOTR records"

    def add_arguments(self, parser):
        parser.add_argument("--arch", required=True, help="architecture descriptor, e.g. eff:l1")
        parser.add_argument("--data", required=True, nargs="+", help="GOTR files or directories")
        parser.add_argument("--epochs", type=int)
        parser.add_argument("--states-per-epoch", type=int)
        parser.add_argument("--batch", type=int)
        parser.add_argument("--lr", type=csv_list(float),
                            help="initial learning rate; several values run a sweep")
        parser.add_argument("--lr-min", type=float)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", help="output directory (default: a fresh directory under runs/)")

    def __call__(self, args):
        dataset = load_dataset(args.data)
        lrs = args.lr or [None]
        cfg = TrainingConfig.from_config(epochs=args.epochs,
                                         states_per_epoch=args.states_per_epoch,
                                         batch_size=args.batch, eta0=lrs[0],
                                         eta_min=args.lr_min, seed=args.seed)
        if args.out is None:
            out = make_run_dir("runs", "train", args.arch, cfg)
        else:
            out = args.out
            os.makedirs(out, exist_ok=True)
        if len(lrs) > 1:
            rows = lr_sweep(args.arch, dataset, lrs, cfg, seed=args.seed)
        else:
            net, report = train(build(args.arch, seed=args.seed), dataset, cfg,
                                checkpoint_dir=out)
            save_checkpoint(net, os.path.join(out, "final.gowt"))
            rows = [{"network": args.arch, "lr": cfg.eta0, "batch": cfg.batch_size,
                     **report.as_row()}]
        write_csv(os.path.join(out, "training.csv"), TRAINING_COLUMNS, rows)
        print(format_table(TRAINING_COLUMNS, rows))
