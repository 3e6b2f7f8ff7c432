from goformer.commands.command import Command, parse_budget
from goformer.harness import generate_selfplay, SelfPlayConfig
from goformer.models import load_checkpoint


class SelfPlay(Command):
    """Randomized self-play games written as GOTR records and SGF."""
    name = "selfplay"
    help = "generate self-play training records"

    def add_arguments(self, parser):
        parser.add_argument("--ckpt", required=True, help="network checkpoint")
        parser.add_argument("--games", type=int, default=1)
        parser.add_argument("--budget", default="16", help="playouts or seconds per move")
        parser.add_argument("--max-moves", type=int)
        parser.add_argument("--workers", type=int, default=1)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", required=True, help="output directory")

    def __call__(self, args):
        playouts, seconds = parse_budget(args.budget)
        cfg = SelfPlayConfig(playouts=playouts if playouts is not None else 16,
                             seconds=seconds, max_moves=args.max_moves,
                             workers=args.workers, seed=args.seed)
        records, games = generate_selfplay(load_checkpoint(args.ckpt), args.games, cfg,
                                           out_dir=args.out)
        print(f"{len(games)} games, {len(records)} records written to {args.out}")
