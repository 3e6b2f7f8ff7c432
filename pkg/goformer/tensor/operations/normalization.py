import numpy as np

from goformer.logger import error, ContractViolation
from .baseOp import BaseOp

EPSILON = 1e-5


class batch_norm(BaseOp):
    """
    Per-channel normalization of a (B, C, H, W) map.

    Sources: input, gamma (C,), beta (C,)

    Attributes:
        running_mean: (C,) array, updated in place in training mode

        running_var: (C,) array, updated in place in training mode

        training: use batch statistics (True) or the running ones (False)

        momentum: weight of the old running value (default: 0.9)
    """

    @staticmethod
    def operation(ctx, x, gamma, beta, running_mean=None, running_var=None,
                  training=False, momentum=0.9):
        if x.ndim != 4 or gamma.shape != (x.shape[1],):
            error(f"batch_norm shape mismatch: input {x.shape}, gamma {gamma.shape}",
                  exc_type=ContractViolation)
        axes = (0, 2, 3)
        if training:
            mu = x.mean(axis=axes)
            var = x.var(axis=axes)
            n = x.size // x.shape[1]
            running_mean *= momentum
            running_mean += (1.0 - momentum) * mu
            running_var *= momentum
            running_var += (1.0 - momentum) * var * (n / max(n - 1, 1))
        else:
            mu, var = running_mean, running_var
        inv_std = (1.0 / np.sqrt(var + EPSILON)).astype(x.dtype)
        xhat = (x - mu.astype(x.dtype)[None, :, None, None]) * inv_std[None, :, None, None]
        ctx.save(xhat=xhat, inv_std=inv_std, gamma=gamma, training=training)
        return xhat * gamma[None, :, None, None] + beta[None, :, None, None]

    @staticmethod
    def gradient(ctx, grad):
        xhat, inv_std, gamma = ctx.xhat, ctx.inv_std, ctx.gamma
        axes = (0, 2, 3)
        dgamma = (grad * xhat).sum(axis=axes)
        dbeta = grad.sum(axis=axes)
        dxhat = grad * gamma[None, :, None, None]
        scale = inv_std[None, :, None, None]
        if not ctx.training:
            return dxhat * scale, dgamma, dbeta
        n = grad.size // grad.shape[1]
        dx = scale / n * (n * dxhat - dxhat.sum(axis=axes, keepdims=True)
                          - xhat * (dxhat * xhat).sum(axis=axes, keepdims=True))
        return dx, dgamma, dbeta


class layer_norm(BaseOp):
    """
    Normalization over the last axis of (..., C) tokens.

    Sources: input, gamma (C,), beta (C,)
    """

    @staticmethod
    def operation(ctx, x, gamma, beta):
        if gamma.shape != (x.shape[-1],):
            error(f"layer_norm shape mismatch: input {x.shape}, gamma {gamma.shape}",
                  exc_type=ContractViolation)
        mu = x.mean(axis=-1, keepdims=True)
        var = x.var(axis=-1, keepdims=True)
        inv_std = 1.0 / np.sqrt(var + EPSILON)
        xhat = (x - mu) * inv_std
        ctx.save(xhat=xhat, inv_std=inv_std, gamma=gamma)
        return xhat * gamma + beta

    @staticmethod
    def gradient(ctx, grad):
        xhat, inv_std, gamma = ctx.xhat, ctx.inv_std, ctx.gamma
        lead = tuple(range(grad.ndim - 1))
        dgamma = (grad * xhat).sum(axis=lead)
        dbeta = grad.sum(axis=lead)
        dxhat = grad * gamma
        c = grad.shape[-1]
        dx = inv_std / c * (c * dxhat - dxhat.sum(axis=-1, keepdims=True)
                            - xhat * (dxhat * xhat).sum(axis=-1, keepdims=True))
        return dx, dgamma, dbeta
