"""Zobrist hashing of (position, player to move)."""
import numpy as np

from goformer.goboard.types import MAX_SIZE

_SEED = 67731329655

_rng = np.random.default_rng(_SEED)
# [color][row][col], color 0 unused (empty points hash to nothing)
_TABLE = _rng.integers(1, 2 ** 63, size=(3, MAX_SIZE, MAX_SIZE), dtype=np.int64)
WHITE_TO_PLAY = int(_rng.integers(1, 2 ** 63, dtype=np.int64))

_flat_cache = {}


def point_keys(size):
    """
    Per-size flat key table, indexed `[color][row * size + col]`. Keys of a
    smaller board are the top-left corner of the 19x19 table.
    """
    keys = _flat_cache.get(size)
    if keys is None:
        keys = tuple(tuple(int(k) for k in _TABLE[c, :size, :size].ravel()) for c in range(3))
        _flat_cache[size] = keys
    return keys


def hash_stones(stones, size, to_play):
    """
    Full hash of a flat stone tuple with the given player to move.

    Args:
        stones: flat sequence of `Color` values, row-major

        size: board size

        to_play: player to move

    Returns:
        a non-negative 63-bit integer
    """
    keys = point_keys(size)
    h = 0
    for index, c in enumerate(stones):
        if c:
            h ^= keys[c][index]
    if to_play == 2:
        h ^= WHITE_TO_PLAY
    return h
