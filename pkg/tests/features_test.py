import pathlib
import sys

# NOTE: the package is installed with `pip install -e .` in CI; the path is
# added so the tests also run from a plain checkout
sys.path.append(str(pathlib.Path(__file__).parent.parent))

import numpy as np
import pytest

from goformer.features import encode, encode_batch, LAYOUT_V1, NUM_PLANES, TrainingSample, \
    RecordSet, write_records, read_records
from goformer.goboard import GameState, Move, Point, Color, LadderStatus, legal_moves, \
    ladder_status
from goformer.logger import ContractViolation


def game_states(moves, seed):
    rng = np.random.default_rng(seed)
    state = GameState.new_game(19)
    states = [state]
    for _ in range(moves):
        legal = np.flatnonzero(state.legal_mask)
        if len(legal) == 0:
            break
        state = state.play(Move.from_index(int(rng.choice(legal)), 19))
        states.append(state)
    return states


def mirror(move):
    return move if move.is_pass else Move.play(Point(move.point.row, 18 - move.point.col))


class LayoutTest:

  def test_thirty_one_planes(self):
    assert NUM_PLANES == 31 == len(LAYOUT_V1)
    for name in ("black_t0", "white_t0", "black_t1", "white_t1", "black_t2", "white_t2",
                 "black_to_play", "opp_ladder_captured", "legal", "komi", "ones"):
      assert LAYOUT_V1[name] < 31

  def test_describe_lists_every_plane(self):
    assert len(LAYOUT_V1.describe().splitlines()) == 31


class EncodeTest:

  def test_empty_board(self):
    planes = encode(GameState.new_game(19, komi=7.5))
    assert planes.shape == (31, 19, 19) and planes.dtype == np.float32
    assert (planes[6] == 1).all()
    assert (planes[23] == 1).all()
    assert (planes[30] == 1).all()
    assert np.allclose(planes[29], 0.5)
    corners = [(0, 0), (0, 18), (18, 0), (18, 18)]
    for r, c in corners:
      assert planes[16, r, c] == 1
    assert planes[17, 0, 5] == 1 and planes[17, 9, 18] == 1
    assert planes[18, 1:-1, 1:-1].all()
    assert planes[15:19].sum(axis=0).min() == 1
    others = [p for p in range(31) if p not in (6, 15, 16, 17, 18, 23, 29, 30)]
    assert not planes[others].any()

  def test_after_first_move(self):
    state = GameState.new_game(19).play(Move.play(Point(3, 3)))
    planes = encode(state)
    assert planes[0].sum() == 1 and planes[0, 3, 3] == 1
    assert not planes[1].any()
    assert not planes[2].any() and not planes[3].any()
    assert not planes[6].any()

  def test_history_planes_follow_predecessors(self):
    states = game_states(3, seed=5)
    planes = encode(states[3])
    assert np.array_equal(planes[2], (states[2].board == Color.BLACK).astype(np.float32))
    assert np.array_equal(planes[5], (states[1].board == Color.WHITE).astype(np.float32))

  def test_explicit_history_overrides(self):
    states = game_states(3, seed=6)
    assert np.array_equal(encode(states[3], (None, None))[2:6], np.zeros((4, 19, 19)))

  def test_plane_invariants_along_games(self):
    for seed in (1, 2):
      for state in game_states(150, seed):
        planes = encode(state)
        binary = np.delete(planes, 29, axis=0)
        assert np.isin(binary, (0.0, 1.0)).all()
        assert (planes[29] == planes[29, 0, 0]).all() and -1 <= planes[29, 0, 0] <= 1
        assert not (planes[0] * planes[1]).any()
        legal = {m for m in legal_moves(state) if not m.is_pass}
        marked = {Move.play(Point(int(r), int(c))) for r, c in zip(*np.nonzero(planes[23]))}
        assert marked == legal

  def test_deterministic(self):
    state = game_states(40, seed=3)[-1]
    assert encode(state).tobytes() == encode(state).tobytes()

  def test_mirror_equivariance(self):
    states = game_states(30, seed=9)
    mirrored = GameState.new_game(19)
    for move, _ in states[-1].history:
      mirrored = mirrored.play(mirror(move))
    assert np.array_equal(encode(mirrored), np.flip(encode(states[-1]), axis=2))

  def test_ladder_planes(self):
    rows = ["XO" + "." * 17, ".O" + "." * 17] + ["." * 19] * 17
    white = GameState.from_board(rows, to_play=Color.WHITE)
    planes = encode(white)
    assert planes[19, 0, 0] == 1 and planes[19].sum() == 1
    assert not planes[20].any()
    black = GameState.from_board(rows, to_play=Color.BLACK)
    planes = encode(black)
    assert planes[20, 0, 0] == 1 and planes[20].sum() == 1
    assert not planes[22].any()

  def test_ladder_plane_matches_ladder_status(self):
    state = game_states(120, seed=12)[-1]
    planes = encode(state)
    expected = np.zeros((19, 19))
    for group in state.groups:
      if group.color != state.to_play and \
              ladder_status(state, group) is LadderStatus.CAPTURED_BY_LADDER:
        for p in group.stones:
          expected[p.row, p.col] = 1
    assert np.array_equal(planes[19], expected)

  @pytest.mark.parametrize("breaker, captured", [(None, True), ((16, 16), False)])
  def test_diagonal_ladder_plane(self, breaker, captured):
    grid = [["."] * 19 for _ in range(19)]
    grid[12][12] = "X"
    for r, c in ((11, 12), (12, 11), (13, 12), (11, 13)):
      grid[r][c] = "O"
    if breaker is not None:
      grid[breaker[0]][breaker[1]] = "X"
    state = GameState.from_board(["".join(row) for row in grid], to_play=Color.WHITE)
    status = ladder_status(state, state.group_at(Point(12, 12)))
    assert (status is LadderStatus.CAPTURED_BY_LADDER) == captured
    planes = encode(state)
    assert planes[19, 12, 12] == captured and planes[19].sum() == int(captured)
    assert not planes[20].any()

  def test_komi_plane_is_clamped(self):
    assert np.allclose(encode(GameState.new_game(19, komi=-30))[29], -1.0)

  def test_rejects_small_boards(self):
    with pytest.raises(ContractViolation):
      encode(GameState.new_game(9))


class EncodeBatchTest:

  def test_rows_follow_input_order(self):
    states = game_states(6, seed=4)
    batch = encode_batch(states)
    assert batch.shape == (7, 31, 19, 19)
    order = [3, 0, 6, 1, 5, 2, 4]
    shuffled = encode_batch([states[i] for i in order])
    assert np.array_equal(shuffled, batch[order])
    assert np.array_equal(encode_batch(states[:1])[0], encode(states[0]))

  def test_identical_states(self):
    state = game_states(10, seed=8)[-1]
    batch = encode_batch([state] * 64)
    assert (batch == batch[0]).all()

  def test_empty_batch(self):
    with pytest.raises(ContractViolation):
      encode_batch([])


class RecordsTest:

  def test_gotr_round_trip(self, tmp_path):
    states = game_states(12, seed=2)
    samples = [TrainingSample(encode(s), m.index(19), float(i % 2))
               for i, (s, (m, _)) in enumerate(zip(states, states[-1].history))]
    records = RecordSet.from_samples(samples)
    path = tmp_path / "games.gotr"
    assert write_records(path, records) == 12
    back = read_records(path)
    assert back.planes.tobytes() == records.planes.tobytes()
    assert np.array_equal(back.policy, records.policy)
    assert back.value.tobytes() == records.value.tobytes()

  def test_pass_samples_are_not_written(self, tmp_path):
    planes = encode(GameState.new_game(19))
    samples = [TrainingSample(planes, 60, 1.0), TrainingSample(planes, 361, 1.0)]
    assert write_records(tmp_path / "a.gotr", samples) == 1

  def test_bad_magic(self, tmp_path):
    path = tmp_path / "bad.gotr"
    path.write_bytes(b"NOPE" + bytes(12))
    with pytest.raises(ContractViolation):
      read_records(path)

  def test_sample_validation(self):
    planes = np.zeros((31, 19, 19), np.float32)
    with pytest.raises(ContractViolation):
      TrainingSample(planes, 362, 0.0)
    with pytest.raises(ContractViolation):
      TrainingSample(planes, 3, 1.5)
    assert TrainingSample(planes, 3, 0.0).policy_one_hot.sum() == 1.0
