import os
from glob import glob

import numpy as np

from goformer.features import RecordSet, read_records
from goformer.logger import error, info, ContractViolation


def load_dataset(paths):
    """
    Reads GOTR files (or every `*.gotr` file of a directory) into one
    `RecordSet`.

    Args:
        paths: a path or a list of paths
    """
    if isinstance(paths, (str, os.PathLike)):
        paths = [paths]
    files = []
    for path in paths:
        if os.path.isdir(path):
            files.extend(sorted(glob(os.path.join(path, "*.gotr"))))
        else:
            files.append(path)
    if not files:
        error(f"No GOTR files found in {paths}", exc_type=ContractViolation)
    records = RecordSet.concatenate(read_records(f) for f in files)
    info(f"Loaded {len(records)} records from {len(files)} file(s)")
    return records


def split_held_out(records, fraction, seed=0):
    """
    Splits a record set into a training part and a held-out part. With a
    zero fraction (or fewer than two records) both parts are the full set.

    Returns:
        (train, held_out)
    """
    n = len(records)
    held = int(round(n * fraction))
    if held == 0 or n < 2:
        return records, records
    held = min(held, n - 1)
    order = np.random.default_rng(seed).permutation(n)
    return records.subset(np.sort(order[held:])), records.subset(np.sort(order[:held]))


def sample_batch(records, batch_size, rng):
    """Uniformly sampled batch indices (with replacement only when the set is smaller)."""
    n = len(records)
    return rng.choice(n, size=batch_size, replace=n < batch_size)


def iterate_batches(records, batch_size):
    """Consecutive (planes, policy, value) slices covering the set in order."""
    for start in range(0, len(records), batch_size):
        end = start + batch_size
        yield records.planes[start:end], records.policy[start:end], records.value[start:end]
