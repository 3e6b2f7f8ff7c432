"""
Ladder reading. A group in atari is read with the defender to move; a group
with two liberties is read with the attacker to move. The defender may extend
at its liberty or capture an adjacent attacker group that is in atari; the
attacker may only play one of the two liberties, and only when that puts the
defender back in atari. Reading stops at the configured depth, and an
unresolved ladder counts as an escape.
"""
from goformer.configManager import get_setting
from goformer.goboard.gameState import neighbor_table
from goformer.goboard.types import LadderStatus, Point

DEFAULT_DEPTH = 64


def ladder_depth():
    return get_setting("goboard", "ladder_depth", DEFAULT_DEPTH)


class _Reader:
    """Mutable scratch board used for one reading; superko is ignored."""

    def __init__(self, stones, size, depth):
        self.size = size
        self.nbs = neighbor_table(size)
        self.depth = depth
        self.memo = {}
        self.root = list(stones)

    def group(self, board, index):
        color = board[index]
        members = {index}
        libs = set()
        frontier = [index]
        while frontier:
            p = frontier.pop()
            for n in self.nbs[p]:
                c = board[n]
                if c == 0:
                    libs.add(n)
                elif c == color and n not in members:
                    members.add(n)
                    frontier.append(n)
        return members, libs

    def place(self, board, index, color):
        """Returns the successor board, or None for occupied/suicide points."""
        if board[index]:
            return None
        board = list(board)
        board[index] = color
        opp = 3 - color
        for n in self.nbs[index]:
            if board[n] == opp:
                members, libs = self.group(board, n)
                if not libs:
                    for s in members:
                        board[s] = 0
        if not self.group(board, index)[1]:
            return None
        return board

    def defender_moves(self, board, target):
        members, libs = self.group(board, target)
        attacker = 3 - board[target]
        moves = set(libs)
        for s in members:
            for n in self.nbs[s]:
                if board[n] == attacker:
                    _, alibs = self.group(board, n)
                    if len(alibs) == 1:
                        moves |= alibs
        return sorted(moves)

    def escapes_after(self, board, target, ply):
        """After a defender move: did the defender get out?"""
        libs = self.group(board, target)[1]
        if len(libs) >= 3:
            return True
        if len(libs) == 2:
            return not self.attacker_captures(board, target, ply + 1)
        return False

    def defender_escapes(self, board, target, ply):
        if ply > self.depth:
            return True
        key = (tuple(board), target, ply, 0)
        if key in self.memo:
            return self.memo[key]
        defender = board[target]
        result = False
        for move in self.defender_moves(board, target):
            after = self.place(board, move, defender)
            if after is not None and self.escapes_after(after, target, ply):
                result = True
                break
        self.memo[key] = result
        return result

    def atari_moves(self, board, target):
        """Attacker moves on the two liberties that leave the defender in atari."""
        attacker = 3 - board[target]
        moves = []
        for lib in sorted(self.group(board, target)[1]):
            after = self.place(board, lib, attacker)
            if after is None:
                continue
            if after[target] == 0 or len(self.group(after, target)[1]) == 1:
                moves.append((lib, after))
        return moves

    def attacker_captures(self, board, target, ply):
        if ply > self.depth:
            return False
        key = (tuple(board), target, ply, 1)
        if key in self.memo:
            return self.memo[key]
        result = False
        for _, after in self.atari_moves(board, target):
            if after[target] == 0 or not self.defender_escapes(after, target, ply + 1):
                result = True
                break
        self.memo[key] = result
        return result


def ladder_status(state, group, depth=None):
    """
    Reads the ladder on a group.

    Args:
        state: the `GameState` holding the group

        group: a `GroupInfo` from `state`

        depth: ply cap of the reading (default: config `goboard.ladder_depth`, 64)

    Returns:
        a `LadderStatus`
    """
    nlibs = len(group.liberties)
    if nlibs >= 3:
        return LadderStatus.NOT_APPLICABLE
    reader = _Reader(state.stones, state.size, ladder_depth() if depth is None else depth)
    target = group.anchor.index(state.size)
    if nlibs == 1:
        captured = not reader.defender_escapes(reader.root, target, 0)
    else:
        captured = reader.attacker_captures(reader.root, target, 0)
    return LadderStatus.CAPTURED_BY_LADDER if captured else LadderStatus.ESCAPES_LADDER


def ladder_capture_moves(state, depth=None):
    """
    Points where the side to play starts a ladder that captures an opponent
    group with two liberties. Only legal moves are reported.
    """
    size = state.size
    mover = int(state.to_play)
    reader = _Reader(state.stones, size, ladder_depth() if depth is None else depth)
    legal = state.legal_mask
    found = set()
    for group in state.groups:
        if group.color == mover or len(group.liberties) != 2:
            continue
        target = group.anchor.index(size)
        for lib, after in reader.atari_moves(reader.root, target):
            if not legal[lib]:
                continue
            if after[target] == 0 or not reader.defender_escapes(after, target, 1):
                found.add(Point.from_index(lib, size))
    return found


def ladder_escape_moves(state, depth=None):
    """
    Points where the side to play saves one of its groups in atari from a
    ladder (extension or capture after which the group is no longer caught).
    Only legal moves are reported.
    """
    size = state.size
    mover = int(state.to_play)
    reader = _Reader(state.stones, size, ladder_depth() if depth is None else depth)
    legal = state.legal_mask
    found = set()
    for group in state.groups:
        if group.color != mover or len(group.liberties) != 1:
            continue
        target = group.anchor.index(size)
        for move in reader.defender_moves(reader.root, target):
            if not legal[move]:
                continue
            after = reader.place(reader.root, move, mover)
            if after is not None and reader.escapes_after(after, target, 0):
                found.add(Point.from_index(move, size))
    return found
