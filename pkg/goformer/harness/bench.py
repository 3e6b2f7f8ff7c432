import statistics
import sys
import time
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from goformer.configManager import get_config
from goformer.features import NUM_PLANES, BOARD_SIZE
from goformer.logger import analysis, info

try:
    import resource
except ImportError:  # not available on Windows
    resource = None


@dataclass(frozen=True)
class BenchConfig:
    """Warmup calls, then `runs` runs of `calls` timed calls each; the median run mean is reported."""
    warmup: int = 100
    calls: int = 100
    runs: int = 7

    @classmethod
    def from_config(cls, **overrides):
        section = get_config("bench") or {}
        names = {f.name for f in fields(cls)}
        values = {k: v for k, v in section.items() if k in names}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class BenchRow:
    network: str
    batch: int
    latency: float
    evals_per_sec: float
    parameters: int
    peak_rss_mb: Optional[float]
    run_means: list


@dataclass
class BenchReport:
    rows: list

    def row(self, network, batch):
        for r in self.rows:
            if r.network == network and r.batch == batch:
                return r
        return None


def peak_rss_mb():
    """Peak resident memory of this process in MB, when the platform reports it."""
    if resource is None:
        return None
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # bytes on macOS, KiB on Linux
    if sys.platform == "darwin":
        return peak / (1024.0 * 1024.0)
    return peak / 1024.0


def time_calls(fn, warmup, calls, runs):
    """
    Runs `fn` warmup times untimed, then `runs` timed runs of `calls` calls.

    Returns:
        list of per-run mean seconds per call
    """
    for _ in range(warmup):
        fn()
    means = []
    for _ in range(runs):
        start = time.perf_counter()
        for _ in range(calls):
            fn()
        means.append((time.perf_counter() - start) / calls)
    return means


def benchmark(nets, batch_sizes, cfg=None, seed=0):
    """
    Measures eval-mode forward latency of each network at each batch size.

    Args:
        nets: list of `Network` (or objects with `predict`, `descriptor` and
            `parameter_count()`)

        batch_sizes: batch sizes to measure

        cfg: `BenchConfig` (default: from the `bench` config section)

        seed: seed of the random input planes

    Returns:
        a `BenchReport`; latency is the median of the run means and
        evals/sec is batch / latency
    """
    cfg = cfg if cfg is not None else BenchConfig.from_config()
    rng = np.random.default_rng(seed)
    rows = []
    for net in nets:
        for batch in batch_sizes:
            planes = (rng.random((batch, NUM_PLANES, BOARD_SIZE, BOARD_SIZE)) < 0.5) \
                .astype(np.float32)
            info(f"bench {net.descriptor} batch {batch}: {cfg.warmup} warmup, "
                 f"{cfg.runs} x {cfg.calls} calls")
            means = time_calls(lambda: net.predict(planes), cfg.warmup, cfg.calls, cfg.runs)
            latency = statistics.median(means)
            row = BenchRow(net.descriptor, batch, latency, batch / latency,
                           net.parameter_count(), peak_rss_mb(), means)
            analysis(f"{row.network:<24s} batch {batch:>5d} latency {latency:.5f}s "
                     f"{row.evals_per_sec:>10.1f} evals/s")
            rows.append(row)
    return BenchReport(rows)
