from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import FrozenSet, NamedTuple, Optional

from goformer.logger import error, ContractViolation

MIN_SIZE = 5
MAX_SIZE = 19


class Color(IntEnum):
    """Point contents and player identity. Values double as board cell codes."""
    EMPTY = 0
    BLACK = 1
    WHITE = 2

    @property
    def opponent(self):
        if self is Color.EMPTY:
            error("Empty has no opponent", exc_type=ContractViolation)
        return Color.WHITE if self is Color.BLACK else Color.BLACK

    @property
    def letter(self):
        return {Color.BLACK: "B", Color.WHITE: "W", Color.EMPTY: "."}[self]


class Point(NamedTuple):
    row: int
    col: int

    def on_board(self, size):
        return 0 <= self.row < size and 0 <= self.col < size

    def index(self, size):
        return self.row * size + self.col

    @classmethod
    def from_index(cls, index, size):
        return cls(index // size, index % size)


@dataclass(frozen=True)
class Move:
    """
    A move is either a play at a point or a pass. Use `Move.play(point)` and
    `Move.pass_turn()` rather than the constructor.
    """
    point: Optional[Point] = None

    @classmethod
    def play(cls, point):
        if not isinstance(point, Point):
            point = Point(*point)
        return cls(point)

    @classmethod
    def pass_turn(cls):
        return cls(None)

    @property
    def is_pass(self):
        return self.point is None

    def index(self, size):
        """Flat policy index; the pass move maps to `size * size`."""
        return size * size if self.is_pass else self.point.index(size)

    @classmethod
    def from_index(cls, index, size):
        if index == size * size:
            return cls.pass_turn()
        return cls.play(Point.from_index(index, size))

    def __str__(self):
        return "pass" if self.is_pass else f"({self.point.row},{self.point.col})"


@dataclass(frozen=True)
class GroupInfo:
    stones: FrozenSet[Point]
    liberties: FrozenSet[Point]
    color: Color

    @property
    def anchor(self):
        """Smallest stone of the group; a stable identifier for the group."""
        return min(self.stones)


class LadderStatus(Enum):
    CAPTURED_BY_LADDER = "captured"
    ESCAPES_LADDER = "escapes"
    NOT_APPLICABLE = "n/a"


class IllegalReason(Enum):
    OCCUPIED = "occupied"
    SUICIDE = "suicide"
    SUPERKO = "superko"
    OFF_BOARD = "off-board"


class IllegalMoveError(RuntimeError):
    """Raised by `play` when a move breaks the rules; `reason` says which rule."""

    def __init__(self, reason, move):
        super().__init__(f"illegal move {move}: {reason.value}")
        self.reason = reason
        self.move = move


def check_size(size):
    if not MIN_SIZE <= size <= MAX_SIZE:
        error(f"Board size {size} outside supported range {MIN_SIZE}..{MAX_SIZE}",
              exc_type=ContractViolation)
    return size
