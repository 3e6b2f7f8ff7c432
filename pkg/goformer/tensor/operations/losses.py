import numpy as np

from goformer.logger import error, ContractViolation
from .baseOp import BaseOp


def log_softmax_array(x):
    shifted = x - x.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


class cross_entropy(BaseOp):
    """
    Mean negative log-likelihood of integer targets under softmax(logits).

    Sources: logits (B, K), targets (B,) holding class indices
    """

    @staticmethod
    def operation(ctx, logits, targets):
        if logits.ndim != 2 or targets.shape != (logits.shape[0],):
            error(f"cross_entropy shape mismatch: logits {logits.shape}, "
                  f"targets {targets.shape}", exc_type=ContractViolation)
        idx = targets.astype(np.int64)
        logp = log_softmax_array(logits)
        ctx.save(logp=logp, idx=idx)
        return np.asarray(-logp[np.arange(len(idx)), idx].mean(), dtype=logits.dtype)

    @staticmethod
    def gradient(ctx, grad):
        logp, idx = ctx.logp, ctx.idx
        dlogits = np.exp(logp)
        dlogits[np.arange(len(idx)), idx] -= 1.0
        return dlogits * (grad / len(idx)), None


class mse(BaseOp):
    """Mean squared error between predictions and targets of the same size."""

    @staticmethod
    def operation(ctx, pred, target):
        if pred.size != target.size:
            error(f"mse size mismatch: {pred.shape} vs {target.shape}",
                  exc_type=ContractViolation)
        diff = pred - target.reshape(pred.shape)
        ctx.save(diff=diff)
        return np.asarray((diff ** 2).mean(), dtype=pred.dtype)

    @staticmethod
    def gradient(ctx, grad):
        diff = ctx.diff
        return 2.0 * diff * (grad / diff.size), None
