import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Optional

from goformer.configManager import get_config
from goformer.goboard import GameState, Color, chinese_score
from goformer.harness.sgfio import game_to_sgf, result_string
from goformer.logger import error, warn, analysis, debug, ContractViolation
from goformer.search import MonteCarloSearch, SearchConfig, as_evaluator


@dataclass(frozen=True)
class MatchConfig:
    """
    Attributes:
        games: number of games, even so both sides play Black equally often

        playouts: playout budget per move (used when `seconds` is None)

        seconds: wall-clock budget per move

        randomized_plies: opening plies played by sampling root visits

        komi: komi of every game

        board_size: board size (19 for networks)

        max_moves: game length cap (default: 2 * board_size^2)

        forfeit_factor: a move taking longer than this many time budgets
            forfeits the game

        workers: games played in parallel

        seed: base seed; game i uses seeds derived from it
    """
    games: int = 2
    playouts: int = 200
    seconds: Optional[float] = None
    randomized_plies: int = 6
    komi: float = 7.5
    board_size: int = 19
    max_moves: Optional[int] = None
    forfeit_factor: float = 10.0
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.games < 2 or self.games % 2:
            error(f"A match needs an even, positive number of games, got {self.games}",
                  exc_type=ContractViolation)
        if self.workers < 1:
            error("workers must be >= 1", exc_type=ContractViolation)

    @property
    def move_cap(self):
        return self.max_moves if self.max_moves is not None else 2 * self.board_size ** 2

    def search_config(self, seed):
        return SearchConfig.from_config(playouts=self.playouts, seconds=self.seconds,
                                        randomized_plies=self.randomized_plies, seed=seed)

    @classmethod
    def from_config(cls, **overrides):
        section = get_config("match") or {}
        names = {f.name for f in fields(cls)}
        values = {k: v for k, v in section.items() if k in names}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class GameRecord:
    """One finished game; `positions` is filled only when requested."""
    moves: list
    winner: Color
    black_points: float
    white_points: float
    komi: float
    size: int
    forfeit: bool = False
    black: str = "black"
    white: str = "white"
    positions: list = field(default_factory=list)

    @property
    def result(self):
        if self.forfeit:
            return ("B" if self.winner is Color.BLACK else "W") + "+F"
        return result_string(self.black_points, self.white_points)

    def to_sgf(self):
        return game_to_sgf(self.moves, size=self.size, komi=self.komi, result=self.result,
                           black_name=self.black, white_name=self.white)


def play_game(black, white, size=19, komi=7.5, max_moves=None, seconds=None,
              forfeit_factor=10.0, keep_positions=False):
    """
    Plays one game between two searches until two passes or the move cap,
    then scores the final position as it stands.

    Args:
        black: `MonteCarloSearch` playing Black

        white: `MonteCarloSearch` playing White (may be the same object)

        size: board size

        komi: komi

        max_moves: move cap (default: 2 * size^2)

        seconds: time budget per move used for the forfeit rule

        forfeit_factor: budget multiple that forfeits the game

        keep_positions: keep the state before every move in the record

    Returns:
        a `GameRecord`
    """
    cap = max_moves if max_moves is not None else 2 * size * size
    engines = {Color.BLACK: black, Color.WHITE: white}
    for engine in set(engines.values()):
        engine.reset()
    state = GameState.new_game(size, komi)
    moves, positions = [], []
    while not state.is_over and state.move_number < cap:
        mover = state.to_play
        start = time.perf_counter()
        result = engines[mover].search(state)
        elapsed = time.perf_counter() - start
        if seconds is not None and elapsed > forfeit_factor * seconds:
            warn(f"{mover.name} took {elapsed:.2f}s for a {seconds}s budget and forfeits")
            return GameRecord(moves, mover.opponent, 0.0, 0.0, komi, size, forfeit=True,
                              positions=positions)
        if keep_positions:
            positions.append(state)
        moves.append((mover, result.move))
        state = state.play(result.move)
        for engine in set(engines.values()):
            engine.advance(result.move)
    black_points, white_points, winner = chinese_score(state)
    debug(f"Game over after {state.move_number} moves: B {black_points} W {white_points}")
    return GameRecord(moves, winner, black_points, white_points, komi, size,
                      positions=positions)


@dataclass
class MatchResult:
    winrate_a: float
    wins_a: int
    games: int
    forfeits: int
    records: list

    def save_sgf(self, directory):
        os.makedirs(directory, exist_ok=True)
        paths = []
        for i, record in enumerate(self.records):
            path = os.path.join(directory, f"game_{i:04d}.sgf")
            with open(path, "wb") as fp:
                fp.write(record.to_sgf())
            paths.append(path)
        return paths


def play_match(net_a, net_b, cfg=None, name_a="A", name_b="B"):
    """
    Plays a color-balanced match under equal search budgets: A is Black in
    even-numbered games and White in odd-numbered ones.

    Args:
        net_a: a `Network` or an evaluator

        net_b: a `Network` or an evaluator

        cfg: `MatchConfig` (default: from the `match` config section)

    Returns:
        a `MatchResult` with A's winrate and every game record
    """
    cfg = cfg if cfg is not None else MatchConfig.from_config()
    eval_a, eval_b = as_evaluator(net_a), as_evaluator(net_b)
    analysis(f"match {name_a} vs {name_b}: {cfg.games} games on {cfg.board_size}x"
             f"{cfg.board_size}, search {cfg.search_config(cfg.seed)}")

    def one_game(i):
        a = MonteCarloSearch(eval_a, cfg.search_config(cfg.seed + 2 * i))
        b = MonteCarloSearch(eval_b, cfg.search_config(cfg.seed + 2 * i + 1))
        a_black = i % 2 == 0
        black, white = (a, b) if a_black else (b, a)
        record = play_game(black, white, cfg.board_size, cfg.komi, cfg.move_cap,
                           cfg.seconds, cfg.forfeit_factor)
        record.black, record.white = (name_a, name_b) if a_black else (name_b, name_a)
        a_won = (record.winner is Color.BLACK) == a_black
        debug(f"game {i}: {record.black} (B) vs {record.white} (W) {record.result}")
        return record, a_won

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(one_game, range(cfg.games)))
    else:
        outcomes = [one_game(i) for i in range(cfg.games)]

    wins = sum(1 for _, won in outcomes if won)
    forfeits = sum(1 for record, _ in outcomes if record.forfeit)
    result = MatchResult(wins / cfg.games, wins, cfg.games, forfeits,
                         [record for record, _ in outcomes])
    analysis(f"match {name_a} vs {name_b}: {wins}/{cfg.games} wins for {name_a} "
             f"(winrate {result.winrate_a:.3f}, {forfeits} forfeits)")
    return result
