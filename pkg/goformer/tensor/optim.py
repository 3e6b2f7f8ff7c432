import math
from dataclasses import dataclass

import numpy as np

from goformer.logger import error, ContractViolation


@dataclass
class AdamState:
    """
    Moments of Adam for an ordered list of parameters. Moments start at zero
    and `t` counts completed steps.
    """
    m: list
    v: list
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_params(cls, params, **kwargs):
        return cls(m=[np.zeros_like(p.data) for p in params],
                   v=[np.zeros_like(p.data) for p in params], **kwargs)


def adam_step(params, grads, state, lr):
    """
    One bias-corrected Adam update, applied in place.

    Args:
        params: list of parameter `Tensor`s

        grads: list of gradient arrays (None counts as zero), same order

        state: the `AdamState` of these parameters

        lr: learning rate

    Returns:
        the updated params
    """
    if len(params) != len(grads) or len(params) != len(state.m):
        error(f"adam_step got {len(params)} params, {len(grads)} grads and "
              f"{len(state.m)} moment slots", exc_type=ContractViolation)
    state.t += 1
    b1, b2 = state.beta1, state.beta2
    c1 = 1.0 - b1 ** state.t
    c2 = 1.0 - b2 ** state.t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if g is None:
            g = np.zeros_like(p.data)
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * g * g
        p.data -= (lr * (m / c1) / (np.sqrt(v / c2) + state.eps)).astype(p.data.dtype)
    return params


@dataclass(frozen=True)
class CosineSchedule:
    """Cosine annealing from eta0 to eta_min over T steps, without restarts."""
    eta0: float
    eta_min: float
    T: int

    def __post_init__(self):
        if self.eta0 <= 0 or self.eta_min < 0 or self.T < 1:
            error(f"Invalid cosine schedule {self}", exc_type=ContractViolation)

    def __call__(self, t):
        return cosine_lr(t, self)


def cosine_lr(t, sched):
    """
    Learning rate at step t: eta_min + (eta0 - eta_min)(1 + cos(pi t / T)) / 2.
    Steps outside 0..T are clamped.
    """
    t = min(max(t, 0), sched.T)
    return sched.eta_min + 0.5 * (sched.eta0 - sched.eta_min) * (1.0 + math.cos(math.pi * t / sched.T))
