from functools import cached_property

import numpy as np

from goformer.goboard import zobrist
from goformer.goboard.types import Color, Point, Move, GroupInfo, IllegalReason, \
    IllegalMoveError, check_size
from goformer.logger import error, debug, ContractViolation

_neighbor_cache = {}


def neighbor_table(size):
    """Flat-index orthogonal neighbors for every point of a `size` board."""
    table = _neighbor_cache.get(size)
    if table is None:
        rows = []
        for index in range(size * size):
            r, c = divmod(index, size)
            nbs = []
            if r > 0:
                nbs.append(index - size)
            if r < size - 1:
                nbs.append(index + size)
            if c > 0:
                nbs.append(index - 1)
            if c < size - 1:
                nbs.append(index + 1)
            rows.append(tuple(nbs))
        table = tuple(rows)
        _neighbor_cache[size] = table
    return table


class _PointAnalysis:
    """What would happen if the side to play put a stone on an empty point."""
    __slots__ = ("liberties", "captured", "new_hash", "reason")

    def __init__(self, liberties, captured, new_hash, reason):
        self.liberties = liberties
        self.captured = captured
        self.new_hash = new_hash
        self.reason = reason


class GameState:
    """
    The game of record: stones, player to move, komi, move history with
    position hashes, capture counters and pass count. A state is an immutable
    value; `play` returns a new state that keeps a reference to its
    predecessor (`previous`) so that encoders can look back in time.

    Use `GameState.new_game` or `GameState.from_board` to build one.
    """

    def __init__(self, size, stones, to_play, komi, history, captures_black,
                 captures_white, consecutive_passes, position_hash, seen,
                 previous=None):
        self.size = size
        self._stones = stones
        self.to_play = to_play
        self.komi = komi
        self.history = history
        self.captures_black = captures_black
        self.captures_white = captures_white
        self.consecutive_passes = consecutive_passes
        self.hash = position_hash
        self._seen = seen
        self.previous = previous

    ## Construction
    @classmethod
    def new_game(cls, size=19, komi=7.5):
        """
        Builds the empty board with Black to play

        Args:
            size: board size, 5..19 (default: 19)

            komi: points given to White (default: 7.5)
        """
        check_size(size)
        stones = (0,) * (size * size)
        h = zobrist.hash_stones(stones, size, Color.BLACK)
        return cls(size, stones, Color.BLACK, float(komi), (), 0, 0, 0, h,
                   frozenset((h,)))

    @classmethod
    def from_board(cls, rows, to_play=Color.BLACK, komi=7.5):
        """
        Builds a set-up position. Rows are strings read top to bottom where
        `X`/`B` is a black stone, `O`/`W` a white stone and `.` an empty point,
        or an N x N integer array of `Color` values.

        Args:
            rows: the position

            to_play: player to move (default: Black)

            komi: points given to White (default: 7.5)
        """
        if isinstance(rows, np.ndarray):
            grid = [[int(v) for v in row] for row in rows]
        else:
            codes = {"X": 1, "B": 1, "O": 2, "W": 2, ".": 0, "+": 0}
            grid = [[codes[ch] for ch in row.replace(" ", "")] for row in rows]
        size = len(grid)
        check_size(size)
        if any(len(row) != size for row in grid):
            error("Board rows must form a square", exc_type=ContractViolation)
        stones = tuple(v for row in grid for v in row)
        to_play = Color(to_play)
        h = zobrist.hash_stones(stones, size, to_play)
        state = cls(size, stones, to_play, float(komi), (), 0, 0, 0, h, frozenset((h,)))
        for group in state.groups:
            if len(group.liberties) == 0:
                error("Set-up position contains a group without liberties",
                      exc_type=ContractViolation)
        return state

    def with_to_play(self, to_play, keep_history=False):
        """
        Same position with another player to move. History restarts here
        unless `keep_history` is set, in which case the moves, the positions
        seen so far and the predecessor chain carry over.
        """
        to_play = Color(to_play)
        h = zobrist.hash_stones(self._stones, self.size, to_play)
        if keep_history:
            return GameState(self.size, self._stones, to_play, self.komi, self.history,
                             self.captures_black, self.captures_white, 0, h,
                             self._seen | {h}, previous=self.previous)
        return GameState(self.size, self._stones, to_play, self.komi, (),
                         self.captures_black, self.captures_white, 0, h,
                         frozenset((h,)))

    ## Queries
    @property
    def stones(self):
        """Flat row-major tuple of `Color` codes."""
        return self._stones

    @property
    def board(self):
        """N x N int8 array of `Color` codes (a fresh copy)."""
        return np.array(self._stones, dtype=np.int8).reshape(self.size, self.size)

    @property
    def is_over(self):
        return self.consecutive_passes >= 2

    @property
    def move_number(self):
        return len(self.history)

    @property
    def last_move(self):
        return self.history[-1][0] if self.history else None

    def color_at(self, point):
        return Color(self._stones[point.index(self.size)])

    def has_seen(self, position_hash):
        return position_hash in self._seen

    @cached_property
    def _group_table(self):
        """(group id per flat point or -1, list of (color, stones, liberties))."""
        size = self.size
        nbs = neighbor_table(size)
        stones = self._stones
        gid = [-1] * (size * size)
        groups = []
        for start in range(size * size):
            color = stones[start]
            if color == 0 or gid[start] != -1:
                continue
            g = len(groups)
            members = [start]
            libs = set()
            gid[start] = g
            frontier = [start]
            while frontier:
                p = frontier.pop()
                for n in nbs[p]:
                    c = stones[n]
                    if c == 0:
                        libs.add(n)
                    elif c == color and gid[n] == -1:
                        gid[n] = g
                        members.append(n)
                        frontier.append(n)
            groups.append((color, members, libs))
        return gid, groups

    @cached_property
    def groups(self):
        """Every group on the board as a `GroupInfo`."""
        size = self.size
        return [GroupInfo(frozenset(Point.from_index(s, size) for s in members),
                          frozenset(Point.from_index(l, size) for l in libs),
                          Color(color))
                for color, members, libs in self._group_table[1]]

    def group_at(self, point):
        """The group containing `point`, or None if the point is empty."""
        g = self._group_table[0][point.index(self.size)]
        return None if g < 0 else self.groups[g]

    def liberty_count_at(self, index):
        g = self._group_table[0][index]
        return 0 if g < 0 else len(self._group_table[1][g][2])

    def _analyse(self, index):
        """Simulates the side to play placing a stone on empty flat `index`."""
        stones = self._stones
        color = int(self.to_play)
        opp = 3 - color
        nbs = neighbor_table(self.size)
        gid, groups = self._group_table
        own_gids = set()
        captured_gids = set()
        libs = set()
        for n in nbs[index]:
            c = stones[n]
            if c == 0:
                libs.add(n)
            elif c == color:
                own_gids.add(gid[n])
            elif len(groups[gid[n]][2]) == 1:
                captured_gids.add(gid[n])
        for g in own_gids:
            libs |= groups[g][2]
        libs.discard(index)
        captured = []
        for g in captured_gids:
            captured.extend(groups[g][1])
        for s in captured:
            for n in nbs[s]:
                if n == index or gid[n] in own_gids:
                    libs.add(s)
                    break
        keys = zobrist.point_keys(self.size)
        new_hash = self.hash ^ keys[color][index] ^ zobrist.WHITE_TO_PLAY
        for s in captured:
            new_hash ^= keys[opp][s]
        if not libs:
            reason = IllegalReason.SUICIDE
        elif new_hash in self._seen:
            reason = IllegalReason.SUPERKO
        else:
            reason = None
        return _PointAnalysis(len(libs), captured, new_hash, reason)

    @cached_property
    def point_analysis(self):
        """Per flat point: `_PointAnalysis` for empty points, None for occupied."""
        return [None if c else self._analyse(i) for i, c in enumerate(self._stones)]

    def check_move(self, move):
        """
        Returns the reason a move is illegal, or None when it is legal.

        Args:
            move: the candidate `Move`
        """
        if move.is_pass:
            return None
        if not move.point.on_board(self.size):
            return IllegalReason.OFF_BOARD
        index = move.point.index(self.size)
        if self._stones[index]:
            return IllegalReason.OCCUPIED
        return self.point_analysis[index].reason

    @cached_property
    def legal_mask(self):
        """Boolean vector over the N*N board points."""
        return np.array([a is not None and a.reason is None for a in self.point_analysis],
                        dtype=bool)

    ## Transitions
    def play(self, move):
        reason = self.check_move(move)
        if reason is not None:
            debug(f"Rejected {self.to_play.letter} {move}: {reason.value}")
            raise IllegalMoveError(reason, move)
        color = self.to_play
        if move.is_pass:
            new_hash = self.hash ^ zobrist.WHITE_TO_PLAY
            return GameState(self.size, self._stones, color.opponent, self.komi,
                             self.history + ((move, new_hash),),
                             self.captures_black, self.captures_white,
                             self.consecutive_passes + 1, new_hash,
                             self._seen | {new_hash}, previous=self)

        index = move.point.index(self.size)
        analysis = self.point_analysis[index]
        stones = list(self._stones)
        stones[index] = int(color)
        for s in analysis.captured:
            stones[s] = 0
        cb, cw = self.captures_black, self.captures_white
        if color is Color.BLACK:
            cb += len(analysis.captured)
        else:
            cw += len(analysis.captured)
        return GameState(self.size, tuple(stones), color.opponent, self.komi,
                         self.history + ((move, analysis.new_hash),), cb, cw, 0,
                         analysis.new_hash, self._seen | {analysis.new_hash},
                         previous=self)

    def __str__(self):
        lines = []
        for r in range(self.size):
            row = self._stones[r * self.size:(r + 1) * self.size]
            lines.append(" ".join(".XO"[c] for c in row))
        return "\n".join(lines)

    def __repr__(self):
        return (f"GameState(size={self.size}, to_play={self.to_play.name}, "
                f"moves={self.move_number}, komi={self.komi})")


def _check_on_board(state, move):
    if not move.is_pass and not move.point.on_board(state.size):
        error(f"Move {move} is off a {state.size}x{state.size} board",
              exc_type=ContractViolation)


def is_legal(state, move):
    """
    Whether `move` is legal for the side to play: passes always are; a play
    must land on an empty point, leave its group at least one liberty after
    captures, and must not recreate an earlier (position, player to move).

    Args:
        state: the current `GameState`

        move: the candidate `Move`

    Returns:
        boolean legality; raises ContractViolation for off-board points
    """
    _check_on_board(state, move)
    return state.check_move(move) is None


def play(state, move):
    """
    Applies a legal move and returns the successor state. Raises
    `IllegalMoveError` carrying the rejection reason otherwise.
    """
    return state.play(move)


def legal_moves(state):
    """The set of legal moves for the side to play, pass included."""
    size = state.size
    moves = {Move.play(Point.from_index(int(i), size))
             for i in np.flatnonzero(state.legal_mask)}
    moves.add(Move.pass_turn())
    return moves
