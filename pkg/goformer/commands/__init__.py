from .command import Command, csv_list, parse_budget
from .train import Train
from .bench import Bench
from .params import Params
from .match import Match
from .selfplay import SelfPlay
from .encode import Encode
from .gtp import Gtp

ALL_COMMANDS = [Train, Bench, Params, Match, SelfPlay, Encode, Gtp]
