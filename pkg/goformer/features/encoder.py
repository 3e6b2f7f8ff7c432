import numpy as np

from goformer.features.planeLayout import LAYOUT_V1, NUM_PLANES, BOARD_SIZE, KOMI_SCALE
from goformer.goboard import Color, IllegalReason, LadderStatus, ladder_status, \
    ladder_capture_moves, ladder_escape_moves
from goformer.logger import error, ContractViolation

_EMPTY_BOARD = np.zeros((BOARD_SIZE, BOARD_SIZE), dtype=np.int8)


def _bucket(values, planes, first, mask):
    """One-hot of counts {1, 2, 3, >=4} into planes first..first+3 where mask holds."""
    for k in range(3):
        planes[first + k] = mask & (values == k + 1)
    planes[first + 3] = mask & (values >= 4)


def _history(state, history2):
    if history2 is not None:
        prev1, prev2 = history2
    else:
        prev1 = state.previous
        prev2 = prev1.previous if prev1 is not None else None
    return [s.board if s is not None else _EMPTY_BOARD for s in (prev1, prev2)]


def encode(state, history2=None):
    """
    Encodes a 19x19 position into the 31 input planes of layout v1.

    Args:
        state: the `GameState` to encode

        history2: the two previous states, most recent first; None entries (or
            a missing argument at game start) stand for empty boards.
            Defaults to the predecessors recorded on `state`.

    Returns:
        float32 array of shape (31, 19, 19)
    """
    if state.size != BOARD_SIZE:
        error(f"Encoder input must be {BOARD_SIZE}x{BOARD_SIZE}, got {state.size}",
              exc_type=ContractViolation)
    n = BOARD_SIZE
    planes = np.zeros((NUM_PLANES, n, n), dtype=np.float32)
    board = state.board
    black, white = board == Color.BLACK, board == Color.WHITE
    planes[0], planes[1] = black, white
    for t, prev in enumerate(_history(state, history2)):
        planes[2 + 2 * t] = prev == Color.BLACK
        planes[3 + 2 * t] = prev == Color.WHITE
    if state.to_play is Color.BLACK:
        planes[6] = 1.0

    libs = np.array([state.liberty_count_at(i) for i in range(n * n)]).reshape(n, n)
    _bucket(libs, planes, 7, black)
    _bucket(libs, planes, 11, white)

    analysis = state.point_analysis
    legal = state.legal_mask.reshape(n, n)
    libs_after = np.array([a.liberties if a is not None else 0 for a in analysis]).reshape(n, n)
    captures = np.array([len(a.captured) if a is not None else 0 for a in analysis]).reshape(n, n)
    _bucket(libs_after, planes, 15, legal)
    _bucket(captures, planes, 25, legal)
    planes[23] = legal
    planes[24] = np.array([a is not None and a.reason is IllegalReason.SUPERKO
                           for a in analysis]).reshape(n, n)

    mover = state.to_play
    for group in state.groups:
        if len(group.liberties) > 2:
            continue
        if ladder_status(state, group) is LadderStatus.CAPTURED_BY_LADDER:
            plane = 20 if group.color == mover else 19
            for p in group.stones:
                planes[plane, p.row, p.col] = 1.0
    for p in ladder_capture_moves(state):
        planes[21, p.row, p.col] = 1.0
    for p in ladder_escape_moves(state):
        planes[22, p.row, p.col] = 1.0

    planes[29] = np.clip(state.komi / KOMI_SCALE, -1.0, 1.0)
    planes[30] = 1.0
    return planes


def encode_batch(states, histories=None):
    """
    Encodes a list of states into a (B, 31, 19, 19) float32 batch, row i
    being `encode(states[i])`.

    Args:
        states: non-empty list of `GameState`

        histories: optional list of `history2` pairs, one per state
    """
    if len(states) == 0:
        error("Cannot encode an empty batch", exc_type=ContractViolation)
    if histories is None:
        histories = [None] * len(states)
    return np.stack([encode(s, h) for s, h in zip(states, histories)])
