import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from goformer.features import encode, TrainingSample, RecordSet, write_records
from goformer.goboard import Color
from goformer.harness.match import play_game
from goformer.logger import info, analysis
from goformer.search import MonteCarloSearch, SearchConfig, as_evaluator


@dataclass(frozen=True)
class SelfPlayConfig:
    playouts: int = 16
    seconds: Optional[float] = None
    randomized_plies: int = 6
    komi: float = 7.5
    max_moves: Optional[int] = None
    workers: int = 1
    seed: int = 0


def _samples(record):
    value = 1.0 if record.winner is Color.WHITE else 0.0
    return [TrainingSample(encode(state), move.index(state.size), value)
            for state, (_, move) in zip(record.positions, record.moves) if not move.is_pass]


def generate_selfplay(net, games, cfg=None, out_dir=None):
    """
    Plays randomized self-play games with one search tree per game shared by
    both colors, and turns every board move into a training record labelled
    with the final result.

    Args:
        net: a 19x19 `Network` (or an evaluator)

        games: number of games

        cfg: `SelfPlayConfig`

        out_dir: when given, `selfplay.gotr` and one SGF per game are written there

    Returns:
        (RecordSet, list of game records)
    """
    cfg = cfg if cfg is not None else SelfPlayConfig()
    evaluator = as_evaluator(net)

    def one_game(i):
        search = MonteCarloSearch(evaluator, SearchConfig.from_config(
            playouts=cfg.playouts, seconds=cfg.seconds,
            randomized_plies=cfg.randomized_plies, seed=cfg.seed + i))
        record = play_game(search, search, 19, cfg.komi, cfg.max_moves, keep_positions=True)
        record.black = record.white = "selfplay"
        return record

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(one_game, range(games)))
    else:
        records = [one_game(i) for i in range(games)]

    samples = [s for record in records for s in _samples(record)]
    record_set = RecordSet.from_samples(samples)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        write_records(os.path.join(out_dir, "selfplay.gotr"), record_set)
        for i, record in enumerate(records):
            with open(os.path.join(out_dir, f"game_{i:04d}.sgf"), "wb") as fp:
                fp.write(record.to_sgf())
        info(f"Wrote {len(records)} self-play games to {out_dir}")
    analysis(f"self-play: {games} games, {len(record_set)} records, "
             f"white wins {sum(r.winner is Color.WHITE for r in records)}")
    return record_set, records
