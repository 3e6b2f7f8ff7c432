"""
GTP vertices: a column letter (A..T without I) and a row number counted from
the bottom edge, e.g. `D4`, or `pass`. Board row 0 is the top edge.
"""
from goformer.goboard import Move, Point, Color

COLUMNS = "ABCDEFGHJKLMNOPQRST"


def parse_vertex(text, size):
    """
    Reads a vertex into a `Move`.

    Returns:
        the move, or None when the text is not a vertex on this board
    """
    text = text.strip().upper()
    if text == "PASS":
        return Move.pass_turn()
    if len(text) < 2 or text[0] not in COLUMNS[:size] or not text[1:].isdigit():
        return None
    number = int(text[1:])
    if not 1 <= number <= size:
        return None
    return Move.play(Point(size - number, COLUMNS.index(text[0])))


def format_vertex(move, size):
    if move.is_pass:
        return "pass"
    return f"{COLUMNS[move.point.col]}{size - move.point.row}"


def parse_color(text):
    return {"b": Color.BLACK, "black": Color.BLACK,
            "w": Color.WHITE, "white": Color.WHITE}.get(text.strip().lower())


def render_board(state):
    """Board diagram with GTP coordinates on all four sides."""
    size = state.size
    letters = "   " + " ".join(COLUMNS[:size])
    lines = [letters]
    for r in range(size):
        number = size - r
        row = state.stones[r * size:(r + 1) * size]
        cells = " ".join(".XO"[c] for c in row)
        lines.append(f"{number:>2d} {cells} {number:<2d}".rstrip())
    lines.append(letters)
    lines.append(f"{state.to_play.name.lower()} to play, "
                 f"captures B {state.captures_black} W {state.captures_white}")
    return "\n".join(lines)
