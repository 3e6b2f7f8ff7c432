"""
Evaluators turn a batch of positions into policy logits over the board
points and White's win value. The search only talks to this interface:

    evaluate(states) -> (logits (B, N*N), white_values (B,))
"""
import numpy as np

from goformer.features import encode_batch
from goformer.goboard import white_win_value


class NetworkEvaluator:
    """Encodes the states and runs an eval-mode forward of a 19x19 network."""

    def __init__(self, net):
        self.net = net

    def evaluate(self, states):
        logits, values = self.net.predict(encode_batch(states))
        return logits, values

    def __repr__(self):
        return f"NetworkEvaluator({self.net.descriptor})"


class UniformEvaluator:
    """Uniform priors and an even value on any board size."""

    def evaluate(self, states):
        size = states[0].size
        return (np.zeros((len(states), size * size), dtype=np.float32),
                np.full(len(states), 0.5, dtype=np.float32))

    def __repr__(self):
        return "UniformEvaluator()"


class ScoringEvaluator(UniformEvaluator):
    """Uniform priors; the value is the area-scoring result of the position as it stands."""

    def evaluate(self, states):
        logits, _ = super().evaluate(states)
        return logits, np.array([white_win_value(s) for s in states], dtype=np.float32)

    def __repr__(self):
        return "ScoringEvaluator()"


def as_evaluator(net_or_evaluator):
    if hasattr(net_or_evaluator, "evaluate"):
        return net_or_evaluator
    return NetworkEvaluator(net_or_evaluator)
