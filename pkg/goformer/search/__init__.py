from .node import Node
from .config import SearchConfig
from .evaluators import NetworkEvaluator, UniformEvaluator, ScoringEvaluator, as_evaluator
from .mcts import SearchResult, MonteCarloSearch, select_leaf, backup, revert_virtual_loss, \
    move_priors, run_search
