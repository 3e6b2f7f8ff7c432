"""
Aligned-text and CSV renderings of experiment results. Each report is a
list of column names and a list of row dicts.
"""
import csv

from goformer.models import PUBLISHED_PARAMETER_COUNTS, build

BENCH_COLUMNS = ["network", "batch", "latency_s", "evals_per_s", "parameters", "peak_rss_mb"]
PARAMETER_COLUMNS = ["network", "parameters", "published", "deviation"]
TRAINING_COLUMNS = ["network", "lr", "batch", "accuracy", "mse", "mae"]
MATCH_COLUMNS = ["network_a", "network_b", "games", "wins_a", "winrate_a", "forfeits"]


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        if value != 0.0 and (abs(value) < 1e-3 or abs(value) >= 1e6):
            return f"{value:.4g}"
        return f"{value:.4f}"
    if isinstance(value, int):
        return f"{value:,d}"
    return str(value)


def format_table(columns, rows):
    """Aligned text table: text left-aligned, numbers right-aligned."""
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    numeric = [all(isinstance(row.get(c), (int, float)) or row.get(c) is None for row in rows)
               for c in columns]

    def line(values):
        return "  ".join(v.rjust(w) if num else v.ljust(w)
                         for v, w, num in zip(values, widths, numeric)).rstrip()

    out = [line(columns), line(["-" * w for w in widths])]
    out.extend(line(r) for r in cells)
    return "\n".join(out)


def write_csv(path, columns, rows):
    with open(path, "w", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: row.get(c) for c in columns})
    return path


def bench_rows(report):
    return [{"network": r.network, "batch": r.batch, "latency_s": r.latency,
             "evals_per_s": r.evals_per_sec, "parameters": r.parameters,
             "peak_rss_mb": r.peak_rss_mb} for r in report.rows]


def parameter_rows(descriptors):
    """Parameter counts of freshly built networks next to the published figures."""
    rows = []
    for descriptor in descriptors:
        count = build(descriptor).parameter_count()
        published = PUBLISHED_PARAMETER_COUNTS.get(descriptor)
        deviation = None if published is None else (count - published) / published
        rows.append({"network": descriptor, "parameters": count, "published": published,
                     "deviation": deviation})
    return rows


def match_rows(name_a, name_b, result):
    return [{"network_a": name_a, "network_b": name_b, "games": result.games,
             "wins_a": result.wins_a, "winrate_a": result.winrate_a,
             "forfeits": result.forfeits}]
