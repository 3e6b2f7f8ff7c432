import numpy as np

from goformer.configManager import get_setting
from goformer.logger import error, ContractViolation
from .activations import softmax_array
from .baseOp import BaseOp


def _split_heads(x, heads):
    b, t, f = x.shape
    return x.reshape(b, t, heads, f // heads).transpose(0, 2, 1, 3)


def _merge_heads(x):
    b, h, t, d = x.shape
    return x.transpose(0, 2, 1, 3).reshape(b, t, h * d)


def _attend(x, wq, bq, wk, bk, wv, bv, wo, bo, bias, heads, scale):
    q = _split_heads(x @ wq.T + bq, heads)
    k = _split_heads(x @ wk.T + bk, heads)
    v = _split_heads(x @ wv.T + bv, heads)
    a = softmax_array(q @ k.transpose(0, 1, 3, 2) * scale + bias[None])
    o = _merge_heads(a @ v)
    return o @ wo.T + bo, (q, k, v, a, o)


class mhsa(BaseOp):
    """
    Multi-head self-attention over (B, T, C) tokens with an additive per-head
    (h, T, T) attention bias.

    Sources: input, wq, bq, wk, bk, wv, bv, wo, bo, attn_bias. The query/key
    projections map C to h*dk, the value projection C to h*dv and the output
    projection h*dv back to C; scores are scaled by 1/sqrt(dk). With
    dk = dv = C/h this is the textbook layer.

    Attributes:
        heads: number of heads; C must be divisible by it
    """

    @staticmethod
    def operation(ctx, x, wq, bq, wk, bk, wv, bv, wo, bo, bias, heads=1):
        b, t, c = x.shape
        if c % heads != 0:
            error(f"mhsa: {c} channels are not divisible by {heads} heads",
                  exc_type=ContractViolation)
        if wq.shape[1] != c or wq.shape[0] % heads != 0 or wk.shape != wq.shape \
                or wv.shape[0] % heads != 0 or wo.shape != (c, wv.shape[0]):
            error(f"mhsa projection shapes do not fit {c} channels and {heads} heads",
                  exc_type=ContractViolation)
        if bias.shape != (heads, t, t):
            error(f"mhsa bias must be {(heads, t, t)}, got {bias.shape}",
                  exc_type=ContractViolation)
        scale = float(1.0 / np.sqrt(wq.shape[0] // heads))
        args = (wq, bq, wk, bk, wv, bv, wo, bo, bias, heads, scale)
        if ctx.recording:
            out, saved = _attend(x, *args)
            ctx.save(x=x, weights=(wq, wk, wv, wo), heads=heads, scale=scale, cache=saved)
            return out
        chunk = max(1, int(get_setting("models", "attention_chunk", 32)))
        return np.concatenate([_attend(x[i:i + chunk], *args)[0]
                               for i in range(0, b, chunk)])

    @staticmethod
    def gradient(ctx, grad):
        x = ctx.x
        wq, wk, wv, wo = ctx.weights
        q, k, v, a, o = ctx.cache
        heads, scale = ctx.heads, ctx.scale
        b, t, c = x.shape
        xf = x.reshape(-1, c)

        g2 = grad.reshape(-1, c)
        dbo = g2.sum(axis=0)
        dwo = g2.T @ o.reshape(-1, o.shape[-1])
        do = _split_heads(grad @ wo, heads)

        da = do @ v.transpose(0, 1, 3, 2)
        dv = a.transpose(0, 1, 3, 2) @ do
        ds = a * (da - (da * a).sum(axis=-1, keepdims=True))
        dbias = ds.sum(axis=0)
        dq = (ds @ k) * scale
        dk = (ds.transpose(0, 1, 3, 2) @ q) * scale

        dqf = _merge_heads(dq).reshape(b * t, -1)
        dkf = _merge_heads(dk).reshape(b * t, -1)
        dvf = _merge_heads(dv).reshape(b * t, -1)
        dx = (dqf @ wq + dkf @ wk + dvf @ wv).reshape(x.shape)
        return (dx, dqf.T @ xf, dqf.sum(axis=0), dkf.T @ xf, dkf.sum(axis=0),
                dvf.T @ xf, dvf.sum(axis=0), dwo, dbo, dbias)


def relative_offset_index(height, width):
    """
    (T, T) index of the absolute row/column offset between every pair of
    points of a height x width grid, T = height * width. Offsets are numbered
    dy * width + dx, so the table has height * width entries.
    """
    rows, cols = np.divmod(np.arange(height * width), width)
    dy = np.abs(rows[:, None] - rows[None, :])
    dx = np.abs(cols[:, None] - cols[None, :])
    return dy * width + dx


class gather_bias(BaseOp):
    """
    Expands a per-head table of offset biases (h, P) into a (h, T, T)
    attention bias by indexing it with a fixed (T, T) offset index.

    Attributes:
        index: integer array of shape (T, T) with values in 0..P-1
    """

    @staticmethod
    def operation(ctx, table, index=None):
        ctx.save(index=index, size=table.shape[1])
        return table[:, index]

    @staticmethod
    def gradient(ctx, grad):
        flat = ctx.index.ravel()
        return (np.stack([np.bincount(flat, weights=g.ravel(), minlength=ctx.size)
                          for g in grad]),)
