import os
from dataclasses import dataclass, fields

import numpy as np

from goformer.configManager import get_config
from goformer.harness.dataset import split_held_out, sample_batch
from goformer.harness.metrics import evaluate, MetricsReport
from goformer.logger import error, analysis, info, ContractViolation
from goformer.models import build, forward, save_checkpoint
from goformer.tensor import Tensor, Tape, backward, AdamState, adam_step, CosineSchedule, \
    cosine_lr, cross_entropy, mse


class TrainingDiverged(RuntimeError):
    """Raised when the training loss stops being finite."""


@dataclass(frozen=True)
class TrainingConfig:
    """
    Attributes:
        epochs: number of epochs

        states_per_epoch: positions drawn per epoch; steps per epoch are
            states_per_epoch / batch_size

        batch_size: positions per Adam step

        eta0: initial learning rate of the cosine schedule (0 freezes weights)

        eta_min: final learning rate

        seed: batch sampling seed

        held_out_fraction: share of the records kept for per-epoch metrics;
            0 measures on the training records
    """
    epochs: int = 20
    states_per_epoch: int = 10_000
    batch_size: int = 64
    eta0: float = 2e-4
    eta_min: float = 0.0
    seed: int = 0
    held_out_fraction: float = 0.1

    def __post_init__(self):
        if self.epochs < 1 or self.states_per_epoch < 1 or self.batch_size < 1:
            error(f"Invalid training config {self}", exc_type=ContractViolation)
        if self.eta0 < 0 or self.eta_min < 0 or self.eta_min > self.eta0:
            error(f"Learning rates must satisfy 0 <= eta_min <= eta0, got {self}",
                  exc_type=ContractViolation)
        if not 0.0 <= self.held_out_fraction < 1.0:
            error(f"held_out_fraction must lie in [0, 1), got {self.held_out_fraction}",
                  exc_type=ContractViolation)

    @property
    def steps_per_epoch(self):
        return max(1, self.states_per_epoch // self.batch_size)

    @property
    def total_steps(self):
        return self.epochs * self.steps_per_epoch

    @classmethod
    def from_config(cls, **overrides):
        """Explicit arguments over the `training` config section over defaults."""
        section = get_config("training") or {}
        names = {f.name for f in fields(cls)}
        values = {k: v for k, v in section.items() if k in names}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def _learning_rate(step, cfg):
    if cfg.eta0 == 0.0:
        return 0.0
    return cosine_lr(step, CosineSchedule(cfg.eta0, cfg.eta_min, cfg.total_steps))


def _grad_norms(params):
    return {p.name: (float(np.linalg.norm(p.grad)) if p.grad is not None else 0.0)
            for p in params}


def training_loss(net, planes, policy, value):
    """Policy cross-entropy plus value MSE, unit weights, on a train-mode forward."""
    out = forward(net, planes, mode="train")
    return cross_entropy(out.policy_logits, Tensor(policy)) + mse(out.value, Tensor(value))


def train(net, dataset, cfg=None, checkpoint_dir=None):
    """
    Trains a network with Adam under cosine annealing (no restarts) over
    epochs * states_per_epoch / batch_size steps.

    Args:
        net: a freshly built or loaded `Network`

        dataset: a non-empty `RecordSet`

        cfg: `TrainingConfig` (default: from the `training` config section)

        checkpoint_dir: when given, a checkpoint is written after every epoch

    Returns:
        (net, MetricsReport of the held-out records after the last epoch)
    """
    cfg = cfg if cfg is not None else TrainingConfig.from_config()
    if len(dataset) == 0:
        error("Cannot train on an empty dataset", exc_type=ContractViolation)
    train_set, held_out = split_held_out(dataset, cfg.held_out_fraction, cfg.seed)
    rng = np.random.default_rng(cfg.seed)
    params = net.trainable_parameters()
    state = AdamState.for_params(params)
    info(f"Training {net.descriptor}: {cfg.epochs} epochs x {cfg.steps_per_epoch} steps, "
         f"batch {cfg.batch_size}, lr {cfg.eta0} -> {cfg.eta_min}, "
         f"{len(train_set)} train / {len(held_out)} held-out records")

    loss_curve, epochs, step_losses = [], [], []
    step = 0
    lr = _learning_rate(0, cfg)
    for epoch in range(cfg.epochs):
        losses = []
        for _ in range(cfg.steps_per_epoch):
            lr = _learning_rate(step, cfg)
            idx = sample_batch(train_set, cfg.batch_size, rng)
            net.zero_grad()
            with Tape() as tape:
                loss = training_loss(net, train_set.planes[idx], train_set.policy[idx],
                                     train_set.value[idx])
            backward(tape, loss)
            value = loss.item()
            if not np.isfinite(value):
                norms = _grad_norms(params)
                worst = sorted(norms.items(), key=lambda kv: -np.nan_to_num(kv[1], nan=np.inf))[:5]
                error(f"Loss became {value} at step {step} (lr {lr:.3g}); largest gradient "
                      f"norms: {worst}", exc_type=TrainingDiverged)
            adam_step(params, [p.grad for p in params], state, lr)
            losses.append(value)
            step += 1
        report = evaluate(net, held_out)
        loss_curve.append(float(np.mean(losses)))
        step_losses.extend(losses)
        epochs.append(report.as_row())
        analysis(f"{net.descriptor} epoch {epoch + 1}/{cfg.epochs} lr {lr:.3g} "
                 f"loss {loss_curve[-1]:.4f} accuracy {report.accuracy:.4f} "
                 f"mse {report.mse:.4f} mae {report.mae:.4f}")
        if checkpoint_dir is not None:
            os.makedirs(checkpoint_dir, exist_ok=True)
            save_checkpoint(net, os.path.join(checkpoint_dir, f"epoch_{epoch + 1:03d}.gowt"))

    final = evaluate(net, held_out)
    return net, MetricsReport(final.accuracy, final.mse, final.mae, final.count,
                              loss_curve=loss_curve, epochs=epochs,
                              step_losses=step_losses)


def lr_sweep(descriptor, dataset, learning_rates, cfg=None, seed=0):
    """
    Trains one architecture at several initial learning rates from the same
    initialization.

    Args:
        descriptor: architecture descriptor string

        dataset: a `RecordSet`

        learning_rates: initial learning rates to try

        cfg: base `TrainingConfig`; its eta0 is replaced per run

        seed: initialization seed

    Returns:
        list of report rows (network, lr, batch, accuracy, mse, mae)
    """
    cfg = cfg if cfg is not None else TrainingConfig.from_config()
    rows = []
    for lr in learning_rates:
        run_cfg = TrainingConfig(epochs=cfg.epochs, states_per_epoch=cfg.states_per_epoch,
                                 batch_size=cfg.batch_size, eta0=lr,
                                 eta_min=min(cfg.eta_min, lr), seed=cfg.seed,
                                 held_out_fraction=cfg.held_out_fraction)
        _, report = train(build(descriptor, seed=seed), dataset, run_cfg)
        rows.append({"network": descriptor, "lr": lr, "batch": cfg.batch_size,
                     **report.as_row()})
        analysis(f"sweep {descriptor} lr {lr:g}: accuracy {report.accuracy:.4f} "
                 f"mse {report.mse:.4f} mae {report.mae:.4f}")
    return rows
