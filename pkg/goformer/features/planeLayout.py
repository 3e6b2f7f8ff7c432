from typing import NamedTuple

LAYOUT_VERSION = 1
BOARD_SIZE = 19
NUM_POINTS = BOARD_SIZE * BOARD_SIZE
PASS_INDEX = NUM_POINTS
KOMI_SCALE = 15.0


class PlaneDescriptor(NamedTuple):
    index: int
    name: str
    semantics: str


_V1 = [
    ("black_t0", "black stones now"),
    ("white_t0", "white stones now"),
    ("black_t1", "black stones one move ago"),
    ("white_t1", "white stones one move ago"),
    ("black_t2", "black stones two moves ago"),
    ("white_t2", "white stones two moves ago"),
    ("black_to_play", "1.0 everywhere when Black is to play"),
    ("black_libs_1", "black stones in groups with 1 liberty"),
    ("black_libs_2", "black stones in groups with 2 liberties"),
    ("black_libs_3", "black stones in groups with 3 liberties"),
    ("black_libs_4p", "black stones in groups with 4 or more liberties"),
    ("white_libs_1", "white stones in groups with 1 liberty"),
    ("white_libs_2", "white stones in groups with 2 liberties"),
    ("white_libs_3", "white stones in groups with 3 liberties"),
    ("white_libs_4p", "white stones in groups with 4 or more liberties"),
    ("libs_after_1", "legal point; own group would have 1 liberty after the move"),
    ("libs_after_2", "legal point; own group would have 2 liberties after the move"),
    ("libs_after_3", "legal point; own group would have 3 liberties after the move"),
    ("libs_after_4p", "legal point; own group would have 4+ liberties after the move"),
    ("opp_ladder_captured", "opponent stones capturable by ladder"),
    ("own_ladder_captured", "own stones capturable by ladder"),
    ("ladder_capture_move", "move starting a successful ladder capture"),
    ("ladder_escape_move", "move escaping a ladder"),
    ("legal", "legal move for the side to play"),
    ("ko_illegal", "empty point illegal only because of superko"),
    ("capture_1", "legal point capturing 1 stone"),
    ("capture_2", "legal point capturing 2 stones"),
    ("capture_3", "legal point capturing 3 stones"),
    ("capture_4p", "legal point capturing 4 or more stones"),
    ("komi", "komi / 15 clamped to [-1, 1], constant plane"),
    ("ones", "1.0 everywhere"),
]


class PlaneLayout:
    """Ordered plane descriptors of an encoder layout, addressable by name."""

    def __init__(self, version, planes):
        self.version = version
        self.planes = tuple(PlaneDescriptor(i, n, s) for i, (n, s) in enumerate(planes))
        self._by_name = {p.name: p.index for p in self.planes}

    def __len__(self):
        return len(self.planes)

    def __getitem__(self, name):
        return self._by_name[name]

    def describe(self):
        return "\n".join(f"P{p.index:<3d}{p.name:<22s}{p.semantics}" for p in self.planes)


LAYOUT_V1 = PlaneLayout(LAYOUT_VERSION, _V1)
NUM_PLANES = len(LAYOUT_V1)
