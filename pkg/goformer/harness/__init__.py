from .dataset import load_dataset, split_held_out, sample_batch, iterate_batches
from .metrics import MetricsReport, evaluate
from .training import TrainingConfig, TrainingDiverged, train, lr_sweep, training_loss
from .sgfio import ingest_sgf, read_game, game_to_sgf, write_sgf, result_string
from .match import MatchConfig, MatchResult, GameRecord, play_game, play_match
from .selfplay import SelfPlayConfig, generate_selfplay
from .bench import BenchConfig, BenchRow, BenchReport, benchmark, time_calls, peak_rss_mb
from .reports import format_table, write_csv, bench_rows, parameter_rows, match_rows, \
    BENCH_COLUMNS, PARAMETER_COLUMNS, TRAINING_COLUMNS, MATCH_COLUMNS
