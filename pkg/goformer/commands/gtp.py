from goformer.commands.command import Command, parse_budget
from goformer.gtp import GtpSession, serve
from goformer.models import load_checkpoint
from goformer.search import SearchConfig


class Gtp(Command):
    """Runs a GTP engine over standard input and output."""
    name = "gtp"
    help = "run the GTP engine"

    def add_arguments(self, parser):
        parser.add_argument("--ckpt", help="network checkpoint (uniform engine when omitted)")
        parser.add_argument("--budget", default="800", help="playouts or seconds per move")
        parser.add_argument("--seed", type=int, default=0)

    def __call__(self, args):
        playouts, seconds = parse_budget(args.budget)
        cfg = SearchConfig.from_config(playouts=playouts, seconds=seconds, seed=args.seed)
        net = load_checkpoint(args.ckpt) if args.ckpt else None
        serve(GtpSession(net, cfg))
