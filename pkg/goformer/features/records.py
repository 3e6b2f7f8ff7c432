"""
GOTR training records.

Little-endian layout:
    magic      4 bytes  b"GOTR"
    version    u32      layout version (1)
    count      u64      number of records
    records    count x  { planes 31*361 f32 (plane-major), policy u16 (0..360), value f32 }
"""
from dataclasses import dataclass

import numpy as np

from goformer.features.planeLayout import NUM_PLANES, NUM_POINTS, BOARD_SIZE, \
    LAYOUT_VERSION, PASS_INDEX
from goformer.logger import error, ContractViolation, info

MAGIC = b"GOTR"

RECORD_DTYPE = np.dtype([("planes", "<f4", (NUM_PLANES * NUM_POINTS,)),
                         ("policy", "<u2"),
                         ("value", "<f4")])


@dataclass
class TrainingSample:
    """
    One position with its targets: the move played (flat index, 361 for a
    pass) and White's win value in [0, 1].
    """
    planes: np.ndarray
    policy_target: int
    value_target: float

    def __post_init__(self):
        if not 0 <= self.policy_target <= PASS_INDEX:
            error(f"Policy target {self.policy_target} outside 0..{PASS_INDEX}",
                  exc_type=ContractViolation)
        if not 0.0 <= self.value_target <= 1.0:
            error(f"Value target {self.value_target} outside [0, 1]",
                  exc_type=ContractViolation)

    @property
    def policy_one_hot(self):
        target = np.zeros(NUM_POINTS, dtype=np.float32)
        if self.policy_target < NUM_POINTS:
            target[self.policy_target] = 1.0
        return target


@dataclass
class RecordSet:
    """Column arrays of a set of training records."""
    planes: np.ndarray   # (n, 31, 19, 19) float32
    policy: np.ndarray   # (n,) int64
    value: np.ndarray    # (n,) float32

    def __len__(self):
        return len(self.policy)

    @classmethod
    def from_samples(cls, samples):
        samples = [s for s in samples if s.policy_target < NUM_POINTS]
        if not samples:
            return cls(np.zeros((0, NUM_PLANES, BOARD_SIZE, BOARD_SIZE), np.float32),
                       np.zeros(0, np.int64), np.zeros(0, np.float32))
        return cls(np.stack([s.planes for s in samples]).astype(np.float32),
                   np.array([s.policy_target for s in samples], dtype=np.int64),
                   np.array([s.value_target for s in samples], dtype=np.float32))

    def subset(self, indices):
        return RecordSet(self.planes[indices], self.policy[indices], self.value[indices])

    def samples(self):
        return [TrainingSample(p, int(m), float(v))
                for p, m, v in zip(self.planes, self.policy, self.value)]

    @classmethod
    def concatenate(cls, sets):
        sets = list(sets)
        return cls(np.concatenate([s.planes for s in sets]),
                   np.concatenate([s.policy for s in sets]),
                   np.concatenate([s.value for s in sets]))


def write_records(path, records):
    """
    Writes records to a GOTR file. Pass samples carry no board-point target
    and are left out.

    Args:
        path: destination file

        records: a `RecordSet` or an iterable of `TrainingSample`

    Returns:
        number of records written
    """
    if not isinstance(records, RecordSet):
        records = RecordSet.from_samples(records)
    table = np.zeros(len(records), dtype=RECORD_DTYPE)
    table["planes"] = records.planes.reshape(len(records), -1)
    table["policy"] = records.policy
    table["value"] = records.value
    with open(path, "wb") as fp:
        fp.write(MAGIC)
        fp.write(np.array([LAYOUT_VERSION], dtype="<u4").tobytes())
        fp.write(np.array([len(records)], dtype="<u8").tobytes())
        fp.write(table.tobytes())
    info(f"Wrote {len(records)} records to {path}")
    return len(records)


def read_records(path):
    """
    Reads a GOTR file written by `write_records`.

    Args:
        path: source file

    Returns:
        a `RecordSet`
    """
    with open(path, "rb") as fp:
        blob = fp.read()
    if blob[:4] != MAGIC:
        error(f"{path} is not a GOTR file", exc_type=ContractViolation)
    version = int(np.frombuffer(blob, dtype="<u4", count=1, offset=4)[0])
    if version != LAYOUT_VERSION:
        error(f"{path} uses layout version {version}, expected {LAYOUT_VERSION}",
              exc_type=ContractViolation)
    count = int(np.frombuffer(blob, dtype="<u8", count=1, offset=8)[0])
    table = np.frombuffer(blob, dtype=RECORD_DTYPE, count=count, offset=16)
    return RecordSet(table["planes"].reshape(count, NUM_PLANES, BOARD_SIZE, BOARD_SIZE).copy(),
                     table["policy"].astype(np.int64),
                     table["value"].copy())
