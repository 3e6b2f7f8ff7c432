import io
import pathlib
import sys

# NOTE: the package is installed with `pip install -e .` in CI; the path is
# added so the tests also run from a plain checkout
sys.path.append(str(pathlib.Path(__file__).parent.parent))

import pytest

from goformer.features import encode
from goformer.goboard import Move, Point, Color, legal_moves
from goformer.gtp import GtpSession, serve, clean_line, parse_vertex, format_vertex, \
    parse_color, render_board, PROTOCOL_VERSION, ENGINE_NAME
from goformer.models import build
from goformer.search import SearchConfig


def session():
    return GtpSession(None, SearchConfig(playouts=8, randomized_plies=0))


class CommandTest:

  def test_identity(self):
    s = session()
    assert s.handle("protocol_version") == f"= {PROTOCOL_VERSION}\n\n"
    assert s.handle("name") == f"= {ENGINE_NAME}\n\n"
    assert s.handle("version").startswith("= ")
    assert s.handle("known_command genmove") == "= true\n\n"
    assert s.handle("known_command undo") == "= false\n\n"
    assert s.handle("known_command") == "? missing command name\n\n"

  def test_list_commands(self):
    listed = session().handle("list_commands")[2:-2].split("\n")
    assert len(listed) == 13
    assert set(listed) == {"protocol_version", "name", "version", "known_command",
                           "list_commands", "boardsize", "clear_board", "komi", "play",
                           "genmove", "final_score", "showboard", "quit"}

  def test_ids_frame_replies(self):
    s = session()
    assert s.handle("1 boardsize 2") == "?1 unacceptable size\n\n"
    assert s.handle("7 boardsize 9") == "=7\n\n"
    assert s.handle("12 name") == f"=12 {ENGINE_NAME}\n\n"
    assert s.handle("3 frobnicate") == "?3 unknown command\n\n"

  def test_lines_without_commands(self):
    s = session()
    assert s.handle("") is None
    assert s.handle("   # just a comment") is None
    assert s.handle("42") is None
    assert s.commands_handled == 0
    assert s.handle("name # trailing comment\r\n") == f"= {ENGINE_NAME}\n\n"
    assert clean_line("\tplay\x01 b D4 # x") == "play b D4"

  def test_play_and_score(self):
    s = session()
    assert s.handle("boardsize 9") == "=\n\n"
    assert s.handle("clear_board") == "=\n\n"
    assert s.handle("final_score") == "= W+7.5\n\n"
    assert s.handle("play b D4") == "=\n\n"
    assert s.state.color_at(Point(5, 3)) is Color.BLACK
    assert s.state.to_play is Color.WHITE
    assert s.handle("final_score") == "= B+73.5\n\n"
    assert s.handle("play w D4") == "? illegal move\n\n"
    assert s.handle("play w Z4") == "? invalid color or coordinate\n\n"
    assert s.handle("play red D5") == "? invalid color or coordinate\n\n"
    assert s.handle("play w pass") == "=\n\n"
    assert s.state.last_move.is_pass

  def test_komi_keeps_the_game(self):
    s = session()
    s.handle("boardsize 9")
    s.handle("play b E5")
    assert s.handle("komi 0.5") == "=\n\n"
    assert s.state.komi == 0.5 and s.state.move_number == 1
    assert s.handle("final_score") == "= B+80.5\n\n"
    assert s.handle("komi lots") == "? komi not a float\n\n"

  def test_boardsize_errors(self):
    s = session()
    assert s.handle("boardsize nine") == "? boardsize not an integer\n\n"
    assert s.handle("boardsize 25") == "? unacceptable size\n\n"
    assert s.size == 19

  def test_network_needs_full_board(self):
    s = GtpSession(build("res:1x8"), SearchConfig(playouts=2, randomized_plies=0))
    assert s.handle("boardsize 9") == "? unacceptable size\n\n"
    assert s.handle("boardsize 19") == "=\n\n"

  def test_genmove(self):
    s = session()
    s.handle("boardsize 7")
    s.handle("play b D4")
    before = s.state
    reply = s.handle("genmove w")
    assert reply.startswith("= ") and reply.endswith("\n\n")
    move = parse_vertex(reply[2:-2], 7)
    assert move in legal_moves(before)
    assert s.played[-1] == (Color.WHITE, move)
    assert s.handle("genmove x") == "? invalid color\n\n"

  def test_genmove_is_deterministic(self):
    replies = []
    for _ in range(2):
      s = session()
      s.handle("boardsize 9")
      replies.append([s.handle("genmove b"), s.handle("genmove w")])
    assert replies[0] == replies[1]

  def test_out_of_turn_play_keeps_history(self):
    s = session()
    s.handle("play b D4")
    first = s.state
    assert s.handle("play b Q16") == "=\n\n"
    state = s.state
    assert state.move_number == 2 and state.to_play is Color.WHITE
    assert state.has_seen(first.hash)
    planes = encode(state)
    assert planes[2, 15, 3] == 1 and planes[2].sum() == 1
    assert not planes[4].any()
    assert s.handle("genmove b").startswith("= ")
    assert s.state.move_number == 3 and s.state.previous.previous.previous is not None

  def test_showboard(self):
    s = session()
    s.handle("boardsize 5")
    s.handle("play b C3")
    reply = s.handle("showboard")
    assert reply.startswith("= \n")
    board = reply[3:-2].split("\n")
    assert board[0] == board[6] == "   A B C D E"
    assert board[3] == " 3 . . X . . 3"

  def test_quit_closes(self):
    s = session()
    assert s.handle("quit") == "=\n\n"
    assert s.closed


class ServeTest:

  def test_transcript(self):
    commands = "1 name\n\n# comment\n2 boardsize 9\n3 play b E5\n4 quit\n5 name\n"
    out = io.StringIO()
    handled = serve(session(), io.StringIO(commands), out)
    assert handled == 4
    assert out.getvalue() == f"=1 {ENGINE_NAME}\n\n=2\n\n=3\n\n=4\n\n"

  def test_end_of_input(self):
    out = io.StringIO()
    assert serve(session(), io.StringIO("name\nversion\n"), out) == 2
    assert out.getvalue().count("\n\n") == 2


class VertexTest:

  @pytest.mark.parametrize("text,size,point", [
    ("A19", 19, Point(0, 0)),
    ("J1", 19, Point(18, 8)),
    ("t1", 19, Point(18, 18)),
    ("D4", 9, Point(5, 3)),
    ("J9", 9, Point(0, 8)),
  ])
  def test_parse(self, text, size, point):
    assert parse_vertex(text, size) == Move.play(point)
    assert format_vertex(Move.play(point), size) == text.upper()

  @pytest.mark.parametrize("text", ["I5", "A20", "A0", "K5x", "5", "", "Z1"])
  def test_invalid(self, text):
    assert parse_vertex(text, 19) is None

  def test_pass_and_small_board_columns(self):
    assert parse_vertex("PASS", 19).is_pass and format_vertex(Move.pass_turn(), 9) == "pass"
    assert parse_vertex("K1", 9) is None

  def test_colors(self):
    assert parse_color("B") is Color.BLACK and parse_color("white") is Color.WHITE
    assert parse_color("x") is None

  def test_render_empty_board(self):
    s = session()
    s.handle("boardsize 5")
    lines = render_board(s.state).split("\n")
    assert len(lines) == 8
    assert lines[1] == " 5 . . . . . 5"
    assert lines[-1] == "black to play, captures B 0 W 0"
