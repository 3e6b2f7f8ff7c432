import math
import pathlib
import sys

# NOTE: the package is installed with `pip install -e .` in CI; the path is
# added so the tests also run from a plain checkout
sys.path.append(str(pathlib.Path(__file__).parent.parent))

import numpy as np
import pytest

from goformer.goboard import GameState, Move, Point, Color, legal_moves, white_win_value
from goformer.logger import ContractViolation
from goformer.search import Node, SearchConfig, MonteCarloSearch, UniformEvaluator, \
    ScoringEvaluator, select_leaf, backup, revert_virtual_loss, move_priors, run_search

# White's twelve stones have one liberty at (3,3); Black's right-edge group
# has one liberty at (3,4). Whoever captures first wins.
CAPTURE_RACE = [
    "OOOOX",
    "OOOOX",
    "OOOOX",
    "XXX..",
    "....O",
]

# Nine white stones with one liberty on the top edge at (0,1); Black's
# fourteen stones have one liberty in the corner at (4,4).
EDGE_CAPTURE = [
    "O.OOO",
    "OOOOO",
    "XXXXX",
    "XXXXX",
    "XXXX.",
]

# White's last liberty is the inner point (1,2), Black's the edge point (4,2).
INNER_CAPTURE = [
    "OOOOO",
    "OO.OO",
    "OOOOO",
    "XXXXX",
    "XX.XX",
]


class FixedEvaluator:
    """Fixed logits for every position and a constant White value."""

    def __init__(self, logits, value=0.5):
        self.logits = np.asarray(logits, dtype=np.float32)
        self.value = value
        self.calls = 0

    def evaluate(self, states):
        self.calls += 1
        return (np.tile(self.logits, (len(states), 1)),
                np.full(len(states), self.value, dtype=np.float32))


def black_wins(state, depth):
    """Full-width minimax over legal moves, scoring positions as they stand."""
    if depth == 0 or state.is_over:
        return white_win_value(state) == 0.0
    outcomes = (black_wins(state.play(m), depth - 1) for m in legal_moves(state))
    return any(outcomes) if state.to_play is Color.BLACK else all(outcomes)


def walk(node):
    yield node
    for child in node.children.values():
        yield from walk(child)


def assert_tree_consistent(root):
  for node in walk(root):
    assert node.virtual_loss == 0
    if node.visits:
      assert 0.0 <= node.q <= 1.0
    if node.is_expanded:
      assert node.visits == 1 + sum(c.visits for c in node.children.values())


def expanded_root(size=5, seed=None):
    state = GameState.new_game(size)
    root = Node(state=state)
    logits = np.zeros(size * size) if seed is None else \
        np.random.default_rng(seed).normal(size=size * size)
    root.expand(move_priors(state, logits, 1e-3))
    return root


def reference_path(root, c_puct):
    """Scalar PUCT descent of a tree without pending evaluations."""
    path, node, vl = [], root, 1
    while node.is_expanded:
        parent_visits = node.visits + vl
        best = None
        for index in sorted(node.children):
            child = node.children[index]
            q = child.value_sum / child.visits if child.visits else 0.0
            score = q + c_puct * child.prior * math.sqrt(parent_visits) / (1 + child.visits)
            if best is None or score > best[0]:
                best = (score, child)
        path.append(best[1].index)
        node = best[1]
    return path


class PriorTest:

  def test_priors_cover_legal_moves_and_pass(self):
    state = GameState.from_board([".XO..", "X.O..", ".....", ".....", "....."],
                                 to_play=Color.WHITE)
    priors = move_priors(state, np.zeros(25), 1e-3)
    assert sum(priors.values()) == pytest.approx(1.0)
    assert list(priors) == sorted(priors) and list(priors)[-1] == 25
    assert priors[25] == pytest.approx(1e-3 / 1.001)
    assert 0 not in priors and 1 not in priors
    legal = {m.index(5) for m in legal_moves(state)}
    assert set(priors) == legal

  def test_softmax_over_legal_points(self):
    state = GameState.new_game(5)
    logits = np.zeros(25)
    logits[12] = math.log(4.0)
    priors = move_priors(state, logits, 1e-3)
    assert priors[12] == pytest.approx(4 * priors[0])


class SelectLeafTest:

  def test_unexpanded_root(self):
    root = Node(state=GameState.new_game(5))
    path = select_leaf(root, 1.25)
    assert path == [(root, None)] and root.virtual_loss == 1
    revert_virtual_loss(path)
    assert root.virtual_loss == 0

  def test_ties_go_to_smallest_index(self):
    root = expanded_root()
    path = select_leaf(root, 1.25)
    assert path[0] == (root, Move.play(Point(0, 0)))
    assert path[1][0].index == 0 and path[1][1] is None

  def test_virtual_loss_steers_the_next_descent(self):
    root = expanded_root()
    first = select_leaf(root, 1.25)
    second = select_leaf(root, 1.25)
    assert first[1][0] is not second[1][0]
    assert second[1][0].index == 1

  @pytest.mark.parametrize("seed", range(20))
  def test_matches_scalar_reference(self, seed):
    rng = np.random.default_rng(seed)
    root = expanded_root(seed=seed)
    for child in root.children.values():
      child.visits = int(rng.integers(0, 6))
      child.value_sum = float(rng.uniform(0, child.visits))
      if child.visits and not child.move.is_pass:
        child.ensure_state()
        child.expand(move_priors(child.state, rng.normal(size=25), 1e-3))
        for grandchild in child.children.values():
          grandchild.visits = int(rng.integers(0, 3))
          grandchild.value_sum = float(rng.uniform(0, grandchild.visits))
        child.visits += sum(g.visits for g in child.children.values())
    root.visits = 1 + sum(c.visits for c in root.children.values())
    c_puct = float(rng.uniform(0.5, 3.0))
    expected = reference_path(root, c_puct)
    path = select_leaf(root, c_puct)
    assert [node.index for node, _ in path[1:]] == expected
    revert_virtual_loss(path)
    assert all(node.virtual_loss == 0 for node in walk(root))

  def test_vanishing_exploration_is_greedy_in_value(self):
    rng = np.random.default_rng(5)
    root = expanded_root(seed=5)
    indices = sorted(root.children)
    q = dict(zip(indices, rng.uniform(0.0, 0.8, size=len(indices))))
    best = indices[len(indices) // 2]
    q[best] = 0.9
    for index, child in root.children.items():
      child.visits, child.value_sum = 1, float(q[index])
    root.visits = 1 + len(indices)
    for _ in range(500):
      path = select_leaf(root, 1e-6)
      leaf = path[-1][0]
      # White's value that gives Black's move the same mean again
      backup(path, 1.0 - q[leaf.index])
    visits = {index: child.visits for index, child in root.children.items()}
    assert visits[best] == 501
    assert all(v == 1 for index, v in visits.items() if index != best)
    assert root.children[best].q == pytest.approx(0.9)


class BackupTest:

  def test_perspective(self):
    root = expanded_root()
    path = select_leaf(root, 1.25)
    leaf = path[-1][0]
    assert leaf.state.to_play is Color.WHITE
    backup(path, 1.0)
    assert leaf.q == 0.0 and root.q == 1.0
    assert leaf.visits == root.visits == 1
    assert leaf.virtual_loss == root.virtual_loss == 0

  def test_mean_of_two_values(self):
    root = Node(state=GameState.new_game(5))
    backup(select_leaf(root, 1.25), 0.0)
    backup(select_leaf(root, 1.25), 1.0)
    assert root.visits == 2 and root.q == 0.5

  def test_random_backups_keep_statistics_consistent(self):
    rng = np.random.default_rng(0)
    root = Node(state=GameState.new_game(5))
    for _ in range(10000):
      path = select_leaf(root, 1.25)
      leaf = path[-1][0]
      if not leaf.is_terminal:
        leaf.expand(move_priors(leaf.state, rng.normal(size=25), 1e-3))
      backup(path, float(rng.uniform()))
    assert root.visits == 10000
    for node in walk(root):
      assert node.virtual_loss == 0
      if node.visits:
        assert 0.0 <= node.q <= 1.0


class MonteCarloSearchTest:

  @pytest.mark.parametrize("rows, capture", [(CAPTURE_RACE, Point(3, 3)),
                                             (EDGE_CAPTURE, Point(0, 1)),
                                             (INNER_CAPTURE, Point(1, 2))])
  def test_finds_the_winning_capture(self, rows, capture):
    state = GameState.from_board(rows, komi=0.5)
    capture = Move.play(capture)
    winning = {m for m in legal_moves(state) if black_wins(state.play(m), 2)}
    assert winning == {capture}
    cfg = SearchConfig(playouts=2000, randomized_plies=0)
    result = run_search(state, ScoringEvaluator(), cfg)
    assert result.move == capture
    assert result.distribution.sum() == pytest.approx(1.0)
    assert result.distribution.argmax() == capture.index(5)
    assert result.value < 0.5

  def test_single_playout_follows_the_prior(self):
    logits = np.zeros(25)
    logits[7] = 3.0
    cfg = SearchConfig(playouts=1, randomized_plies=0)
    result = run_search(GameState.new_game(5), FixedEvaluator(logits), cfg)
    assert result.move == Move.from_index(7, 5)
    assert result.playouts == 1
    assert result.distribution.argmax() == 7

  def test_bookkeeping_after_search(self):
    cfg = SearchConfig(playouts=300, eval_batch=8, randomized_plies=0)
    result = run_search(GameState.new_game(9), UniformEvaluator(), cfg)
    assert result.root.visits == result.playouts >= 300
    assert_tree_consistent(result.root)
    assert result.move in legal_moves(GameState.new_game(9))

  def test_batches_share_network_calls(self):
    evaluator = FixedEvaluator(np.zeros(25))
    run_search(GameState.new_game(5), evaluator, SearchConfig(playouts=64, eval_batch=8))
    assert evaluator.calls < 64

  def test_large_exploration_follows_priors(self):
    logits = np.random.default_rng(3).normal(scale=1.5, size=25)
    state = GameState.new_game(5)
    cfg = SearchConfig(c_puct=1000.0, playouts=2000, randomized_plies=0)
    result = run_search(state, FixedEvaluator(logits), cfg)
    priors = move_priors(state, logits, cfg.pass_prior)
    indices = sorted(priors)
    visits = np.array([result.root.children[i].visits for i in indices], dtype=float)
    prior = np.array([priors[i] for i in indices])
    assert np.corrcoef(visits, prior)[0, 1] > 0.95
    assert visits[prior.argmax()] >= 0.8 * visits.max()

  def test_deterministic(self):
    cfg = SearchConfig(playouts=200, seed=11)
    state = GameState.new_game(7).play(Move.play(Point(3, 3)))
    first = run_search(state, ScoringEvaluator(), cfg)
    second = run_search(state, ScoringEvaluator(), cfg)
    assert first.move == second.move
    assert np.array_equal(first.distribution, second.distribution)

  def test_finished_game(self):
    state = GameState.new_game(5).play(Move.pass_turn()).play(Move.pass_turn())
    with pytest.raises(ContractViolation):
      run_search(state, UniformEvaluator(), SearchConfig(playouts=4))

  def test_tree_reuse(self):
    search = MonteCarloSearch(ScoringEvaluator(), SearchConfig(playouts=200, randomized_plies=0))
    state = GameState.new_game(5)
    result = search.search(state)
    child = result.root.children[result.move.index(5)]
    kept = child.visits
    search.advance(result.move)
    assert search.root is child and child.parent is None
    again = search.search(state.play(result.move))
    assert again.root is child
    assert child.visits == kept + again.playouts
    assert_tree_consistent(child)

  def test_advance_without_reuse_drops_the_tree(self):
    search = MonteCarloSearch(UniformEvaluator(), SearchConfig(playouts=8, reuse_tree=False))
    search.search(GameState.new_game(5))
    search.advance(Move.play(Point(4, 4)))
    assert search.root is None
    search = MonteCarloSearch(UniformEvaluator(), SearchConfig(playouts=1))
    search.advance(Move.play(Point(4, 4)))
    assert search.root is None
    root = search.search(GameState.new_game(5)).root
    search.advance(Move.play(Point(4, 4)))
    assert search.root is root.children[24] and search.root.visits == 0

  def test_time_budget(self):
    cfg = SearchConfig(seconds=0.05, randomized_plies=0)
    result = run_search(GameState.new_game(5), UniformEvaluator(), cfg)
    assert result.playouts >= 1
    assert_tree_consistent(result.root)

  def test_invalid_config(self):
    with pytest.raises(ContractViolation):
      SearchConfig(c_puct=0.0)
    with pytest.raises(ContractViolation):
      SearchConfig(playouts=0)
    with pytest.raises(ContractViolation):
      SearchConfig(pass_prior=1.0)
