from functools import lru_cache

import numpy as np

from goformer.logger import error, ContractViolation
from .baseOp import BaseOp


def _box_sum(x):
    """3x3 neighbourhood sum over the last two axes with zero padding."""
    xp = np.pad(x, [(0, 0)] * (x.ndim - 2) + [(1, 1), (1, 1)])
    h, w = x.shape[-2:]
    out = np.zeros_like(x)
    for i in range(3):
        for j in range(3):
            out += xp[..., i:i + h, j:j + w]
    return out


@lru_cache(maxsize=None)
def _tap_counts(h, w):
    return _box_sum(np.ones((h, w)))


class avg_pool3x3_same(BaseOp):
    """
    3x3 stride-1 mean pooling of a (B, C, H, W) map. Border points divide by
    the number of in-bounds taps, so a constant map is left unchanged.
    """

    @staticmethod
    def operation(ctx, x):
        if x.ndim != 4:
            error("avg_pool3x3_same expects a 4-d input, got", x.shape,
                  exc_type=ContractViolation)
        counts = _tap_counts(*x.shape[-2:]).astype(x.dtype)
        ctx.save(counts=counts)
        return _box_sum(x) / counts

    @staticmethod
    def gradient(ctx, grad):
        return (_box_sum(grad / ctx.counts),)


class global_avg_pool(BaseOp):
    """(B, C, H, W) -> (B, C) spatial mean."""

    @staticmethod
    def operation(ctx, x):
        if x.ndim != 4:
            error("global_avg_pool expects a 4-d input, got", x.shape,
                  exc_type=ContractViolation)
        ctx.save(shape=x.shape)
        return x.mean(axis=(2, 3))

    @staticmethod
    def gradient(ctx, grad):
        b, c, h, w = ctx.shape
        return (np.broadcast_to(grad[:, :, None, None] / (h * w), ctx.shape),)
