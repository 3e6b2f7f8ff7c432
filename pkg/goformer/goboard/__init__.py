from .types import Color, Point, Move, GroupInfo, LadderStatus, IllegalReason, \
    IllegalMoveError, MIN_SIZE, MAX_SIZE
from .gameState import GameState, is_legal, play, legal_moves
from .scoring import chinese_score, white_win_value
from .ladders import ladder_status, ladder_capture_moves, ladder_escape_moves
