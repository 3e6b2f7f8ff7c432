import math
import time
from dataclasses import dataclass

import numpy as np

from goformer.goboard import Move, white_win_value
from goformer.logger import error, debug, ContractViolation
from goformer.search.config import SearchConfig
from goformer.search.evaluators import as_evaluator
from goformer.search.node import Node


@dataclass
class SearchResult:
    """
    Outcome of one search.

    Attributes:
        move: the chosen move (always legal)

        distribution: root visit shares over the N*N points and pass (index
            N*N), summing to 1; the root priors when no child was visited

        value: White's win estimate at the root

        playouts: completed playouts

        root: the root node, for inspection
    """
    move: Move
    distribution: np.ndarray
    value: float
    playouts: int
    root: Node


def _best_child(node, c_puct):
    sqrt_parent = math.sqrt(node.visits + node.virtual_loss)
    best, best_score = None, -math.inf
    for child in node.children.values():
        n = child.visits + child.virtual_loss
        q = child.value_sum / n if n else 0.0
        score = q + c_puct * child.prior * sqrt_parent / (1 + n)
        if score > best_score:
            best, best_score = child, score
    return best


def select_leaf(root, c_puct, virtual_loss=1):
    """
    Descends from the root by maximal PUCT score until an unexpanded or
    terminal node. Virtual loss is charged to every node on the way; ties go
    to the smallest move index.

    Args:
        root: the root `Node` (its state must be set)

        c_puct: exploration constant

        virtual_loss: visits charged per node (default: 1)

    Returns:
        path as a list of (node, move played from it); the last entry is
        (leaf, None), so an unexpanded root gives [(root, None)]
    """
    node = root
    node.virtual_loss += virtual_loss
    path = []
    while node.is_expanded and not node.is_terminal:
        child = _best_child(node, c_puct)
        path.append((node, child.move))
        node = child
        node.ensure_state()
        node.virtual_loss += virtual_loss
    path.append((node, None))
    return path


def backup(path, value, virtual_loss=1):
    """
    Adds one visit with White's win value `value` to every node of a path,
    each from the perspective of the player who moved into it, and removes
    the path's virtual loss.
    """
    for node, _ in path:
        node.visits += 1
        node.value_sum += node.mover_value(value)
        node.virtual_loss = max(0, node.virtual_loss - virtual_loss)


def revert_virtual_loss(path, virtual_loss=1):
    for node, _ in path:
        node.virtual_loss = max(0, node.virtual_loss - virtual_loss)


def move_priors(state, logits, pass_prior):
    """
    Softmax of the logits over the legal points plus a pass prior, all
    renormalized to sum to 1. Keys are ascending move indices.
    """
    legal = np.flatnonzero(state.legal_mask)
    pass_index = state.size * state.size
    if legal.size == 0:
        return {pass_index: 1.0}
    z = np.asarray(logits, dtype=np.float64)[legal]
    p = np.exp(z - z.max())
    p /= p.sum()
    total = 1.0 + pass_prior
    priors = {int(i): float(pi) / total for i, pi in zip(legal, p)}
    priors[pass_index] = pass_prior / total
    return priors


class MonteCarloSearch:
    """
    Batched PUCT search that keeps its tree between moves. Call `search` for
    the position to move in and `advance` for every move actually played
    (own and opponent) so the matching subtree becomes the next root.

    One instance has a single owner; run independent searches from separate
    instances.
    """

    def __init__(self, evaluator, config=None):
        """
        Args:
            evaluator: a `Network` or an object with `evaluate(states)`

            config: `SearchConfig` (default: from the `search` config section)
        """
        self.evaluator = as_evaluator(evaluator)
        self.config = config if config is not None else SearchConfig.from_config()
        self.rng = np.random.default_rng(self.config.seed)
        self.root = None

    def reset(self):
        self.root = None

    def _root_for(self, state):
        root = self.root
        if self.config.reuse_tree and root is not None and root.state is not None \
                and root.state.hash == state.hash and root.state.history == state.history:
            return root
        return Node(state=state)

    def advance(self, move):
        """Promotes the subtree of a played move to the root."""
        root = self.root
        if not self.config.reuse_tree or root is None or root.state is None:
            self.root = None
            return
        child = root.children.get(move.index(root.state.size))
        if child is None:
            self.root = None
            return
        child.ensure_state()
        self.root = child.detach()

    def _gather(self, root, remaining):
        cfg = self.config
        pending, seen, done = [], set(), 0
        while len(pending) < cfg.eval_batch and done + len(pending) < remaining:
            path = select_leaf(root, cfg.c_puct, cfg.virtual_loss)
            leaf = path[-1][0]
            if leaf.is_terminal:
                backup(path, white_win_value(leaf.state), cfg.virtual_loss)
                done += 1
                continue
            if id(leaf) in seen:
                revert_virtual_loss(path, cfg.virtual_loss)
                break
            seen.add(id(leaf))
            pending.append(path)
        if pending:
            logits, values = self.evaluator.evaluate([p[-1][0].state for p in pending])
            for path, row, value in zip(pending, logits, values):
                leaf = path[-1][0]
                leaf.expand(move_priors(leaf.state, row, cfg.pass_prior))
                backup(path, float(value), cfg.virtual_loss)
        return done + len(pending)

    def search(self, state):
        """
        Runs playouts from `state` until the budget is spent.

        Args:
            state: the position to move in; must not be over

        Returns:
            a `SearchResult`
        """
        if state.is_over:
            error("Cannot search a finished game", exc_type=ContractViolation)
        cfg = self.config
        root = self.root = self._root_for(state)
        start = time.perf_counter()
        playouts = 0
        if cfg.seconds is None:
            while playouts < cfg.playouts:
                playouts += self._gather(root, cfg.playouts - playouts)
        else:
            deadline = start + cfg.seconds
            while playouts == 0 or time.perf_counter() < deadline:
                playouts += self._gather(root, cfg.eval_batch)
        if not root.is_expanded:
            playouts += self._gather(root, 1)

        randomize = state.move_number < cfg.randomized_plies
        move = self._choose(root, randomize)
        result = SearchResult(move, self._distribution(root), self._root_value(root),
                              playouts, root)
        debug(f"search: {state.to_play.letter} {move} after {playouts} playouts in "
              f"{time.perf_counter() - start:.3f}s, white value {result.value:.3f}")
        return result

    def _choose(self, root, randomize):
        children = list(root.children.values())
        visits = np.array([c.visits for c in children], dtype=np.float64)
        if randomize and visits.sum() > 0:
            pick = self.rng.choice(len(children), p=visits / visits.sum())
            return children[pick].move
        best = max(children, key=lambda c: (c.visits, c.prior, -c.index))
        return best.move

    @staticmethod
    def _distribution(root):
        size = root.state.size
        dist = np.zeros(size * size + 1)
        for index, child in root.children.items():
            dist[index] = child.visits
        if dist.sum() == 0:
            for index, child in root.children.items():
                dist[index] = child.prior
        return dist / dist.sum()

    @staticmethod
    def _root_value(root):
        """White's value of the root: its statistics are kept for the player who moved into it."""
        if root.visits == 0:
            return 0.5
        return root.mover_value(root.q)


def run_search(state, net, cfg=None):
    """
    Searches one position with a fresh tree.

    Args:
        state: the position to move in

        net: a `Network` or an evaluator

        cfg: `SearchConfig` (default: from the `search` config section)

    Returns:
        a `SearchResult`
    """
    return MonteCarloSearch(net, cfg).search(state)
