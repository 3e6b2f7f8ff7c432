import re

from goformer.goboard import GameState, IllegalMoveError, chinese_score
from goformer.gtp.vertex import parse_vertex, format_vertex, parse_color, render_board
from goformer.harness.sgfio import result_string
from goformer.logger import debug, info
from goformer.search import MonteCarloSearch, SearchConfig, UniformEvaluator

PROTOCOL_VERSION = "2"
ENGINE_NAME = "goformer"

_CONTROL = re.compile(r"[\x00-\x08\x0b-\x1f\x7f]")


class GtpError(Exception):
    """A command failure; the message becomes the `?` reply."""


def clean_line(line):
    """Drops comments and control characters and turns tabs into spaces."""
    line = line.split("#", 1)[0].replace("\t", " ")
    return _CONTROL.sub("", line).strip()


class GtpSession:
    """
    One GTP connection: the current game, the engine's search and a command
    counter. Commands are handled strictly one at a time.

    Without a network the session plays with uniform priors and accepts any
    board size from 5 to 19; with a network only 19 is accepted.
    """

    def __init__(self, net=None, search_config=None, size=19, komi=7.5):
        """
        Args:
            net: a 19x19 `Network`, or None for the uniform engine

            search_config: `SearchConfig` of `genmove`
                (default: from the `search` config section)

            size: initial board size

            komi: initial komi
        """
        self.net = net
        self.search = MonteCarloSearch(net if net is not None else UniformEvaluator(),
                                       search_config if search_config is not None
                                       else SearchConfig.from_config())
        self.size = size
        self.komi = float(komi)
        self.state = GameState.new_game(size, komi)
        self.played = []
        self.commands_handled = 0
        self.closed = False

        self._commands = {
            "protocol_version": self._protocol_version,
            "name": self._name,
            "version": self._version,
            "known_command": self._known_command,
            "list_commands": self._list_commands,
            "boardsize": self._boardsize,
            "clear_board": self._clear_board,
            "komi": self._komi,
            "play": self._play,
            "genmove": self._genmove,
            "final_score": self._final_score,
            "showboard": self._showboard,
            "quit": self._quit,
        }

    @property
    def commands(self):
        return list(self._commands)

    def handle(self, line):
        """
        Handles one command line.

        Args:
            line: `[id] command [arguments]`

        Returns:
            the full reply (`=[id] result` or `?[id] message`, then a blank
            line), or None for a line holding no command
        """
        words = clean_line(line).split()
        if not words:
            return None
        cmd_id = ""
        if words[0].isdigit():
            cmd_id = words.pop(0)
        if not words:
            return None
        self.commands_handled += 1
        name, args = words[0], words[1:]
        handler = self._commands.get(name)
        try:
            if handler is None:
                raise GtpError("unknown command")
            result = handler(args)
        except GtpError as e:
            debug(f"gtp {name}: ? {e}")
            return f"?{cmd_id} {e}\n\n"
        result = "" if result is None else result
        return f"={cmd_id} {result}\n\n" if result else f"={cmd_id}\n\n"

    ## Game bookkeeping
    def _reset(self):
        self.state = GameState.new_game(self.size, self.komi)
        self.played = []
        self.search.reset()

    def _apply(self, color, move):
        state = self.state
        reset_tree = False
        if color is not state.to_play:
            state = state.with_to_play(color, keep_history=True)
            reset_tree = True
        state = state.play(move)
        self.state = state
        self.played.append((color, move))
        if reset_tree:
            self.search.reset()
        else:
            self.search.advance(move)

    ## Commands
    def _protocol_version(self, args):
        return PROTOCOL_VERSION

    def _name(self, args):
        return ENGINE_NAME

    def _version(self, args):
        from goformer import __version__
        return __version__

    def _known_command(self, args):
        if not args:
            raise GtpError("missing command name")
        return "true" if args[0] in self._commands else "false"

    def _list_commands(self, args):
        return "\n".join(self._commands)

    def _boardsize(self, args):
        if not args or not args[0].isdigit():
            raise GtpError("boardsize not an integer")
        size = int(args[0])
        if not 5 <= size <= 19 or (self.net is not None and size != 19):
            raise GtpError("unacceptable size")
        self.size = size
        self._reset()
        info(f"gtp: board size {size}")

    def _clear_board(self, args):
        self._reset()

    def _komi(self, args):
        try:
            komi = float(args[0])
        except (IndexError, ValueError):
            raise GtpError("komi not a float")
        self.komi = komi
        played = self.played
        self._reset()
        for color, move in played:
            self._apply(color, move)

    def _play(self, args):
        if len(args) < 2:
            raise GtpError("invalid color or coordinate")
        color = parse_color(args[0])
        move = parse_vertex(args[1], self.size)
        if color is None or move is None:
            raise GtpError("invalid color or coordinate")
        try:
            self._apply(color, move)
        except IllegalMoveError:
            raise GtpError("illegal move")

    def _genmove(self, args):
        color = parse_color(args[0]) if args else None
        if color is None:
            raise GtpError("invalid color")
        state = self.state
        if color is not state.to_play:
            state = state.with_to_play(color, keep_history=True)
        if state.is_over:
            move = state.last_move
        else:
            move = self.search.search(state).move
        self._apply(color, move)
        return format_vertex(move, self.size)

    def _final_score(self, args):
        black_points, white_points, _ = chinese_score(self.state)
        return result_string(black_points, white_points)

    def _showboard(self, args):
        return "\n" + render_board(self.state)

    def _quit(self, args):
        self.closed = True
