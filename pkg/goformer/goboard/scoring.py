from goformer.goboard.gameState import neighbor_table
from goformer.goboard.types import Color


def empty_regions(state):
    """
    Splits the empty points into 4-connected regions.

    Returns:
        list of (flat points, set of bordering colors)
    """
    size = state.size
    nbs = neighbor_table(size)
    stones = state.stones
    seen = [False] * (size * size)
    regions = []
    for start in range(size * size):
        if stones[start] or seen[start]:
            continue
        seen[start] = True
        members = [start]
        borders = set()
        frontier = [start]
        while frontier:
            p = frontier.pop()
            for n in nbs[p]:
                c = stones[n]
                if c:
                    borders.add(c)
                elif not seen[n]:
                    seen[n] = True
                    members.append(n)
                    frontier.append(n)
        regions.append((members, borders))
    return regions


def area(state):
    """Stones plus single-color-bordered territory per color, komi excluded."""
    black = sum(1 for c in state.stones if c == Color.BLACK)
    white = sum(1 for c in state.stones if c == Color.WHITE)
    for members, borders in empty_regions(state):
        if borders == {Color.BLACK}:
            black += len(members)
        elif borders == {Color.WHITE}:
            white += len(members)
    return black, white


def chinese_score(state):
    """
    Area scoring of the position as it stands (no dead-stone removal): each
    side gets its stones plus the empty regions bordered only by its stones;
    White also gets komi. White wins exact ties.

    Args:
        state: the `GameState` to score

    Returns:
        (black_points, white_points, winner)
    """
    black, white = area(state)
    black_points = float(black)
    white_points = float(white) + state.komi
    winner = Color.BLACK if black_points > white_points else Color.WHITE
    return black_points, white_points, winner


def white_win_value(state):
    """1.0 when White wins the scored position, else 0.0."""
    return 1.0 if chinese_score(state)[2] is Color.WHITE else 0.0
