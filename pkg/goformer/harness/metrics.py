from dataclasses import dataclass, field

import numpy as np

from goformer.harness.dataset import iterate_batches
from goformer.logger import error, ContractViolation


@dataclass
class MetricsReport:
    """
    Policy and value quality on a record set: top-1 policy accuracy against
    the played move, and MSE / MAE of the value against the game outcome.
    `loss_curve` holds the mean training loss per epoch, `step_losses` the
    loss of every Adam step and `epochs` the per-epoch held-out reports when
    produced by `train`.
    """
    accuracy: float
    mse: float
    mae: float
    count: int
    loss_curve: list = field(default_factory=list)
    epochs: list = field(default_factory=list)
    step_losses: list = field(default_factory=list)

    def as_row(self):
        return {"accuracy": self.accuracy, "mse": self.mse, "mae": self.mae}


def evaluate(net, records, batch_size=256):
    """
    Measures a predictor on a record set in eval mode. Pass moves carry no
    board-point target and never appear in record sets.

    Args:
        net: anything with `predict(planes) -> (policy_logits, value)`, a
            `Network` in particular

        records: a `RecordSet`

        batch_size: evaluation batch (does not change the result)

    Returns:
        a `MetricsReport`
    """
    n = len(records)
    if n == 0:
        error("Cannot evaluate on an empty record set", exc_type=ContractViolation)
    correct = 0
    sq_sum = 0.0
    abs_sum = 0.0
    for planes, policy, value in iterate_batches(records, batch_size):
        logits, pred = net.predict(planes)
        correct += int((np.argmax(logits, axis=1) == policy).sum())
        err = np.asarray(pred, dtype=np.float64).reshape(-1) - value.astype(np.float64)
        sq_sum += float((err ** 2).sum())
        abs_sum += float(np.abs(err).sum())
    return MetricsReport(accuracy=correct / n, mse=sq_sum / n, mae=abs_sum / n, count=n)
