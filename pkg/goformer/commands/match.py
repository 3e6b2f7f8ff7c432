import os

from goformer.commands.command import Command, parse_budget
from goformer.harness import play_match, MatchConfig, match_rows, format_table, write_csv, \
    MATCH_COLUMNS
from goformer.models import load_checkpoint
from goformer.search import UniformEvaluator

UNIFORM = "uniform"


def load_player(path):
    """A checkpoint, or the uniform-policy engine for the name `uniform`."""
    return UniformEvaluator() if path == UNIFORM else load_checkpoint(path)


class Match(Command):
    """Color-balanced match between two checkpoints under equal search budgets."""
    name = "match"
    help = "play a match between two checkpoints"

    def add_arguments(self, parser):
        parser.add_argument("--a", required=True, help=f"checkpoint of A (or '{UNIFORM}')")
        parser.add_argument("--b", required=True, help=f"checkpoint of B (or '{UNIFORM}')")
        parser.add_argument("--games", type=int)
        parser.add_argument("--budget", default="200",
                            help="playouts per move, or seconds per move (e.g. 10s)")
        parser.add_argument("--komi", type=float)
        parser.add_argument("--size", type=int, help="board size (uniform players only)")
        parser.add_argument("--workers", type=int)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--out", default="runs/match", help="SGF and report directory")

    def __call__(self, args):
        playouts, seconds = parse_budget(args.budget)
        cfg = MatchConfig.from_config(games=args.games, playouts=playouts, seconds=seconds,
                                      komi=args.komi, board_size=args.size,
                                      workers=args.workers, seed=args.seed)
        result = play_match(load_player(args.a), load_player(args.b), cfg,
                            name_a=os.path.basename(args.a), name_b=os.path.basename(args.b))
        result.save_sgf(os.path.join(args.out, "games"))
        rows = match_rows(args.a, args.b, result)
        write_csv(os.path.join(args.out, "match.csv"), MATCH_COLUMNS, rows)
        print(format_table(MATCH_COLUMNS, rows))
