import numpy as np

from .baseOp import BaseOp


def _unbroadcast(grad, shape):
    """Sums `grad` down to `shape`, undoing numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


class add(BaseOp):
    """Broadcasting elementwise sum of two tensors."""

    @staticmethod
    def operation(ctx, a, b):
        ctx.save(shapes=(a.shape, b.shape))
        return a + b

    @staticmethod
    def gradient(ctx, grad):
        sa, sb = ctx.shapes
        return _unbroadcast(grad, sa), _unbroadcast(grad, sb)


class sub(BaseOp):
    """Broadcasting elementwise difference of two tensors."""

    @staticmethod
    def operation(ctx, a, b):
        ctx.save(shapes=(a.shape, b.shape))
        return a - b

    @staticmethod
    def gradient(ctx, grad):
        sa, sb = ctx.shapes
        return _unbroadcast(grad, sa), -_unbroadcast(grad, sb)


class mul(BaseOp):
    """Broadcasting elementwise product of two tensors."""

    @staticmethod
    def operation(ctx, a, b):
        ctx.save(a=a, b=b)
        return a * b

    @staticmethod
    def gradient(ctx, grad):
        return _unbroadcast(grad * ctx.b, ctx.a.shape), _unbroadcast(grad * ctx.a, ctx.b.shape)


class summation(BaseOp):
    """Sum of every element, as a scalar."""

    @staticmethod
    def operation(ctx, x):
        ctx.save(shape=x.shape)
        return np.asarray(x.sum(), dtype=x.dtype)

    @staticmethod
    def gradient(ctx, grad):
        return (np.broadcast_to(grad, ctx.shape),)


class mean(BaseOp):
    """Mean of every element, as a scalar."""

    @staticmethod
    def operation(ctx, x):
        ctx.save(shape=x.shape)
        return np.asarray(x.mean(), dtype=x.dtype)

    @staticmethod
    def gradient(ctx, grad):
        size = int(np.prod(ctx.shape))
        return (np.broadcast_to(grad / size, ctx.shape),)
