import numpy as np

from .baseOp import BaseOp

_GELU_C = float(np.sqrt(2.0 / np.pi))
_GELU_A = 0.044715


class relu(BaseOp):
    @staticmethod
    def operation(ctx, x):
        ctx.save(mask=x > 0)
        return np.maximum(x, 0)

    @staticmethod
    def gradient(ctx, grad):
        return (grad * ctx.mask,)


class gelu(BaseOp):
    """GELU, tanh approximation."""

    @staticmethod
    def operation(ctx, x):
        t = np.tanh(_GELU_C * (x + _GELU_A * x ** 3))
        ctx.save(x=x, t=t)
        return (0.5 * x * (1.0 + t)).astype(x.dtype)

    @staticmethod
    def gradient(ctx, grad):
        x, t = ctx.x, ctx.t
        inner = _GELU_C * (1.0 + 3.0 * _GELU_A * x ** 2)
        return (grad * (0.5 * (1.0 + t) + 0.5 * x * (1.0 - t ** 2) * inner),)


class sigmoid(BaseOp):
    @staticmethod
    def operation(ctx, x):
        out = np.exp(-np.logaddexp(0, -x)).astype(x.dtype)
        ctx.save(out=out)
        return out

    @staticmethod
    def gradient(ctx, grad):
        out = ctx.out
        return (grad * out * (1.0 - out),)


def softmax_array(x, axis=-1):
    shifted = x - x.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


class softmax(BaseOp):
    """Softmax over the last axis."""

    @staticmethod
    def operation(ctx, x):
        out = softmax_array(x)
        ctx.save(out=out)
        return out

    @staticmethod
    def gradient(ctx, grad):
        out = ctx.out
        return (out * (grad - (grad * out).sum(axis=-1, keepdims=True)),)
