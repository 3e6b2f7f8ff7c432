from dataclasses import dataclass, fields, replace
from typing import Optional

from goformer.configManager import get_config
from goformer.logger import error, ContractViolation


@dataclass(frozen=True)
class SearchConfig:
    """
    Settings of one search. The budget is either a playout count or, when
    `seconds` is set, wall-clock time per move.

    Attributes:
        c_puct: exploration constant of the PUCT score

        eval_batch: leaves gathered per network call

        virtual_loss: visits (valued as losses) charged to a path while its
            leaf waits for evaluation

        playouts: playout budget, used when `seconds` is None

        seconds: wall-clock budget per move

        pass_prior: prior given to pass before renormalization

        randomized_plies: opening plies whose move is sampled from the root
            visit counts (temperature 1); greedy afterwards

        reuse_tree: keep the subtree of the played move for the next search

        seed: seed of the move sampler
    """
    c_puct: float = 1.25
    eval_batch: int = 8
    virtual_loss: int = 1
    playouts: int = 800
    seconds: Optional[float] = None
    pass_prior: float = 1e-3
    randomized_plies: int = 6
    reuse_tree: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.c_puct <= 0 or self.eval_batch < 1 or self.virtual_loss < 1:
            error(f"Invalid search config {self}", exc_type=ContractViolation)
        if self.seconds is None and self.playouts < 1:
            error("Search budget must be at least one playout", exc_type=ContractViolation)
        if self.seconds is not None and self.seconds <= 0:
            error("Search time budget must be positive", exc_type=ContractViolation)
        if not 0.0 < self.pass_prior < 1.0:
            error(f"pass_prior must lie in (0, 1), got {self.pass_prior}",
                  exc_type=ContractViolation)

    @classmethod
    def from_config(cls, **overrides):
        """
        Layers explicit arguments over the `search` config section over the
        defaults above.
        """
        section = get_config("search") or {}
        names = {f.name for f in fields(cls)}
        values = {k: v for k, v in section.items() if k in names}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_budget(self, playouts=None, seconds=None):
        if seconds is not None:
            return replace(self, seconds=seconds)
        return replace(self, playouts=playouts, seconds=None)
