"""
GOWT weight checkpoints.

Little-endian layout:
    magic        4 bytes  b"GOWT"
    version      u32      (1)
    descriptor   u32 length + utf-8 architecture descriptor
    count        u32      number of named arrays
    per array:   u32 length + utf-8 name, u8 trainable flag, u8 ndim,
                 ndim x u32 shape, f32 payload (C order)
"""
import struct

import numpy as np

from goformer.logger import error, info, ContractViolation
from goformer.models.builders import build

MAGIC = b"GOWT"
VERSION = 1


def _pack_str(text):
    raw = text.encode("utf-8")
    return struct.pack("<I", len(raw)) + raw


def save_checkpoint(net, path):
    """
    Writes every parameter and buffer of a network to a GOWT file.

    Args:
        net: the `Network` to save

        path: destination file
    """
    chunks = [MAGIC, struct.pack("<I", VERSION), _pack_str(net.descriptor),
              struct.pack("<I", len(net.params))]
    for name, param in net.params.items():
        chunks.append(_pack_str(name))
        chunks.append(struct.pack("<BB", int(param.trainable), param.data.ndim))
        chunks.append(struct.pack(f"<{param.data.ndim}I", *param.shape))
        chunks.append(np.ascontiguousarray(param.data, dtype="<f4").tobytes())
    with open(path, "wb") as fp:
        fp.write(b"".join(chunks))
    info(f"Saved {net.descriptor} ({len(net.params)} arrays) to {path}")


class _Cursor:
    def __init__(self, blob, path):
        self.blob = blob
        self.pos = 0
        self.path = path

    def take(self, fmt):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.blob):
            error(f"Truncated checkpoint {self.path}", exc_type=ContractViolation)
        values = struct.unpack_from(fmt, self.blob, self.pos)
        self.pos += size
        return values

    def take_str(self):
        (n,) = self.take("<I")
        raw = self.blob[self.pos:self.pos + n]
        self.pos += n
        return raw.decode("utf-8")

    def take_array(self, shape):
        count = int(np.prod(shape, dtype=np.int64))
        if self.pos + 4 * count > len(self.blob):
            error(f"Truncated checkpoint {self.path}", exc_type=ContractViolation)
        arr = np.frombuffer(self.blob, dtype="<f4", count=count, offset=self.pos)
        self.pos += 4 * count
        return arr.reshape(shape)


def read_checkpoint(path):
    """
    Reads a GOWT file without building a network.

    Returns:
        (descriptor, dict name -> (trainable, float32 array))
    """
    with open(path, "rb") as fp:
        blob = fp.read()
    if blob[:4] != MAGIC:
        error(f"{path} is not a GOWT checkpoint", exc_type=ContractViolation)
    cursor = _Cursor(blob, path)
    cursor.pos = 4
    (version,) = cursor.take("<I")
    if version != VERSION:
        error(f"{path} has checkpoint version {version}, expected {VERSION}",
              exc_type=ContractViolation)
    descriptor = cursor.take_str()
    (count,) = cursor.take("<I")
    arrays = {}
    for _ in range(count):
        name = cursor.take_str()
        trainable, ndim = cursor.take("<BB")
        shape = cursor.take(f"<{ndim}I")
        arrays[name] = (bool(trainable), cursor.take_array(shape))
    return descriptor, arrays


def load_checkpoint(path):
    """
    Rebuilds the network described in a GOWT file and loads its arrays.

    Args:
        path: source file

    Returns:
        the loaded `Network`
    """
    descriptor, arrays = read_checkpoint(path)
    net = build(descriptor)
    missing = set(net.params) ^ set(arrays)
    if missing:
        error(f"Checkpoint {path} does not match {descriptor}: "
              f"mismatched names {sorted(missing)[:5]}", exc_type=ContractViolation)
    for name, param in net.params.items():
        param.set(arrays[name][1])
    info(f"Loaded {descriptor} from {path}")
    return net
