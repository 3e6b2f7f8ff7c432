import numpy as np

from .baseOp import BaseOp


class reshape(BaseOp):
    @staticmethod
    def operation(ctx, x, shape=None):
        ctx.save(shape=x.shape)
        return x.reshape(shape)

    @staticmethod
    def gradient(ctx, grad):
        return (grad.reshape(ctx.shape),)


class transpose(BaseOp):
    @staticmethod
    def operation(ctx, x, axes=None):
        ctx.save(axes=axes)
        return np.ascontiguousarray(x.transpose(axes))

    @staticmethod
    def gradient(ctx, grad):
        return (grad.transpose(np.argsort(ctx.axes)),)


def to_tokens(x):
    """(B, C, H, W) feature map to (B, H*W, C) tokens, row-major over points."""
    b, c, h, w = x.shape
    return transpose(reshape(x, shape=(b, c, h * w)), axes=(0, 2, 1))


def to_map(x, height, width):
    """(B, H*W, C) tokens back to a (B, C, H, W) feature map."""
    b, t, c = x.shape
    return reshape(transpose(x, axes=(0, 2, 1)), shape=(b, c, height, width))
