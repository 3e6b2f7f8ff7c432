from abc import ABC, abstractmethod


class Command(ABC):
    """
    The base class of the `goformer` sub-commands. A command declares its name
    and help text, registers its own arguments on a sub-parser, and is called
    with the parsed arguments.
    """
    name = None
    help = None

    def __init__(self, subparsers):
        """
        Args:
            subparsers: the sub-parser collection of the main argument parser
        """
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help)
        self.add_arguments(parser)
        parser.set_defaults(command=self)

    @abstractmethod
    def add_arguments(self, parser):
        pass

    @abstractmethod
    def __call__(self, args):
        pass


def csv_list(cast):
    """argparse type for comma separated values."""
    def parse(text):
        return [cast(v) for v in text.split(",") if v]
    return parse


def parse_budget(text):
    """
    A search budget: an integer is a playout count, a number with a decimal
    point or an `s` suffix is seconds per move.

    Returns:
        (playouts, seconds), one of them None
    """
    text = str(text).strip().lower()
    if text.endswith("s"):
        return None, float(text[:-1])
    if "." in text:
        return None, float(text)
    return int(text), None
