import os
from glob import glob

from sgfmill import sgf

from goformer.features import encode, TrainingSample, BOARD_SIZE
from goformer.goboard import GameState, Move, Point, Color, IllegalMoveError
from goformer.logger import warn, info, debug


def _to_point(sgf_move, size):
    """sgfmill counts rows from the bottom edge."""
    row, col = sgf_move
    return Point(size - 1 - row, col)


def _to_sgf(point, size):
    return size - 1 - point.row, point.col


def result_string(black_points, white_points):
    """`B+x.y` / `W+x.y` from two area scores; White takes exact ties."""
    margin = black_points - white_points
    if margin > 0:
        return f"B+{margin:.1f}"
    return f"W+{-margin:.1f}"


def game_to_sgf(moves, size=BOARD_SIZE, komi=7.5, result=None, black_name=None,
                white_name=None):
    """
    Serialises a game record.

    Args:
        moves: sequence of (Color, Move)

        size: board size

        komi: komi of the game

        result: RE value such as `W+2.5`

        black_name: optional PB value

        white_name: optional PW value

    Returns:
        SGF bytes
    """
    game = sgf.Sgf_game(size=size)
    root = game.get_root()
    root.set("KM", komi)
    root.set("RU", "Chinese")
    if result is not None:
        root.set("RE", result)
    if black_name is not None:
        root.set("PB", black_name)
    if white_name is not None:
        root.set("PW", white_name)
    for color, move in moves:
        node = game.extend_main_sequence()
        node.set_move("b" if color is Color.BLACK else "w",
                      None if move.is_pass else _to_sgf(move.point, size))
    return game.serialise()


def write_sgf(path, moves, **kwargs):
    with open(path, "wb") as fp:
        fp.write(game_to_sgf(moves, **kwargs))
    return path


def _value_from_result(result):
    if not result:
        return None
    head = result.strip().upper()[:1]
    if head == "W":
        return 1.0
    if head == "B":
        return 0.0
    return None


def _sgf_files(paths):
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    for path in paths:
        if os.path.isdir(path):
            yield from sorted(glob(os.path.join(path, "*.sgf")))
        else:
            yield path


def read_game(path):
    """
    Replays one SGF file through the rules engine.

    Returns:
        (list of (state before the move, Move), White's win value), or None
        when the file is skipped (logged)
    """
    try:
        with open(path, "rb") as fp:
            game = sgf.Sgf_game.from_bytes(fp.read())
    except (ValueError, OSError) as exc:
        warn(f"Skipping {path}: malformed SGF ({exc})")
        return None
    size = game.get_size()
    if size != BOARD_SIZE:
        warn(f"Skipping {path}: board size {size}, networks need {BOARD_SIZE}")
        return None
    root = game.get_root()
    if root.has_property("AB") or root.has_property("AW"):
        warn(f"Skipping {path}: set-up stones are not supported")
        return None
    value = _value_from_result(root.get("RE") if root.has_property("RE") else None)
    if value is None:
        warn(f"Skipping {path}: no decisive RE result")
        return None
    try:
        komi = game.get_komi()
        recorded = [node.get_move() for node in game.get_main_sequence()[1:]]
    except ValueError as exc:
        warn(f"Skipping {path}: malformed property ({exc})")
        return None
    state = GameState.new_game(size, komi)
    positions = []
    for color, sgf_move in recorded:
        if color is None:
            continue
        mover = Color.BLACK if color == "b" else Color.WHITE
        move = Move.pass_turn() if sgf_move is None else Move.play(_to_point(sgf_move, size))
        if mover is not state.to_play:
            warn(f"Skipping {path}: {mover.name} moves out of turn at move {state.move_number + 1}")
            return None
        try:
            after = state.play(move)
        except IllegalMoveError as exc:
            warn(f"Skipping {path}: illegal move {move} at move {state.move_number + 1} "
                 f"({exc.reason.value})")
            return None
        positions.append((state, move))
        state = after
    return positions, value


def ingest_sgf(paths):
    """
    Turns SGF games into training samples: one per board move, with the
    played point as policy target and the RE-derived White win value for
    every position of the game. Passes give no sample. Malformed files and
    games with illegal moves are skipped and logged.

    Args:
        paths: SGF files or directories of `*.sgf` files

    Returns:
        list of `TrainingSample`
    """
    samples = []
    games = skipped = 0
    for path in _sgf_files(paths):
        replay = read_game(path)
        if replay is None:
            skipped += 1
            continue
        positions, value = replay
        games += 1
        for state, move in positions:
            if move.is_pass:
                continue
            samples.append(TrainingSample(encode(state), move.index(state.size), value))
        debug(f"Ingested {path}: {len(positions)} moves")
    info(f"Ingested {games} games ({len(samples)} samples), skipped {skipped}")
    return samples
