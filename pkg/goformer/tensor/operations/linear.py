import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from goformer.logger import error, ContractViolation
from .baseOp import BaseOp


class conv2d_same(BaseOp):
    """
    Stride-1 cross-correlation with zero padding (k-1)/2, so the output keeps
    the spatial size of the input.

    Sources: input (B, C, H, W), kernel (O, C, k, k), bias (O,)
    """

    @staticmethod
    def operation(ctx, x, w, b):
        if x.ndim != 4 or w.ndim != 4:
            error("conv2d_same expects 4-d input and kernel, got", x.shape, w.shape,
                  exc_type=ContractViolation)
        if x.shape[1] != w.shape[1]:
            error(f"conv2d_same channel mismatch: input has {x.shape[1]}, "
                  f"kernel expects {w.shape[1]}", exc_type=ContractViolation)
        k = w.shape[2]
        if k % 2 == 0 or w.shape[3] != k:
            error(f"conv2d_same needs a square odd kernel, got {w.shape[2:]}",
                  exc_type=ContractViolation)
        bsz, c, h, wd = x.shape
        o = w.shape[0]
        if k == 1:
            cols = x.transpose(0, 2, 3, 1).reshape(-1, c)
        else:
            p = (k - 1) // 2
            xp = np.pad(x, ((0, 0), (0, 0), (p, p), (p, p)))
            cols = sliding_window_view(xp, (k, k), axis=(2, 3))
            cols = cols.transpose(0, 2, 3, 1, 4, 5).reshape(-1, c * k * k)
        out = cols @ w.reshape(o, -1).T + b
        ctx.save(cols=cols, w=w, in_shape=x.shape)
        return np.ascontiguousarray(out.reshape(bsz, h, wd, o).transpose(0, 3, 1, 2))

    @staticmethod
    def gradient(ctx, grad):
        w, cols = ctx.w, ctx.cols
        bsz, c, h, wd = ctx.in_shape
        o, _, k, _ = w.shape
        gm = grad.transpose(0, 2, 3, 1).reshape(-1, o)
        db = gm.sum(axis=0)
        dw = (gm.T @ cols).reshape(w.shape)
        dcols = gm @ w.reshape(o, -1)
        if k == 1:
            dx = dcols.reshape(bsz, h, wd, c).transpose(0, 3, 1, 2)
            return dx, dw, db
        p = (k - 1) // 2
        dcols = dcols.reshape(bsz, h, wd, c, k, k)
        dxp = np.zeros((bsz, c, h + 2 * p, wd + 2 * p), dtype=grad.dtype)
        for i in range(k):
            for j in range(k):
                dxp[:, :, i:i + h, j:j + wd] += dcols[:, :, :, :, i, j].transpose(0, 3, 1, 2)
        return dxp[:, :, p:p + h, p:p + wd], dw, db


class dense(BaseOp):
    """
    Affine map over the last axis: x @ W.T + b.

    Sources: input (..., F), weight (O, F), bias (O,)
    """

    @staticmethod
    def operation(ctx, x, w, b):
        if w.ndim != 2 or x.shape[-1] != w.shape[1] or b.shape != (w.shape[0],):
            error(f"dense shape mismatch: input {x.shape}, weight {w.shape}, bias {b.shape}",
                  exc_type=ContractViolation)
        ctx.save(x=x, w=w)
        return x @ w.T + b

    @staticmethod
    def gradient(ctx, grad):
        x, w = ctx.x, ctx.w
        g2 = grad.reshape(-1, w.shape[0])
        dw = g2.T @ x.reshape(-1, w.shape[1])
        return grad @ w, dw, g2.sum(axis=0)
