"""
Architecture configurations and descriptor strings.

Descriptor grammar:
    res:<blocks>x<planes>                         e.g. res:10x128
    eff:<l1|l3|l7|l9>                             named preset
    eff:[w0,w1]x[d0,d1]:mb3d=<n>:heads=<h>        explicit, textbook attention
        optionally followed by :kd=<n>:ar=<n>     per-head key width and
                                                  value/key width ratio
"""
import re
from dataclasses import dataclass
from typing import Optional, Tuple

from goformer.logger import error, ContractViolation


@dataclass(frozen=True)
class ResidualConfig:
    blocks: int
    planes: int

    def __post_init__(self):
        if self.blocks < 1 or self.planes < 1:
            error(f"Residual config needs blocks >= 1 and planes >= 1, got {self}",
                  exc_type=ContractViolation)

    @property
    def descriptor(self):
        return f"res:{self.blocks}x{self.planes}"

    @property
    def label(self):
        return f"Residual({self.blocks},{self.planes})"


@dataclass(frozen=True)
class EfficientFormerConfig:
    """
    Two-stage EfficientFormer adapted to 19x19 boards. Attention uses
    `key_dim` per head for queries/keys and `key_dim * attn_ratio` for values;
    when `key_dim` is None both are widths[1] / heads.
    """
    widths: Tuple[int, int]
    depths: Tuple[int, int]
    mb3d_count: int = 1
    heads: int = 8
    key_dim: Optional[int] = None
    attn_ratio: int = 1
    name: Optional[str] = None

    def __post_init__(self):
        if len(self.widths) != 2 or len(self.depths) != 2 or min(self.widths) < 1 \
                or min(self.depths) < 1:
            error(f"EfficientFormer widths and depths must be positive pairs, got {self}",
                  exc_type=ContractViolation)
        if not 0 <= self.mb3d_count <= self.depths[1]:
            error(f"mb3d_count {self.mb3d_count} must lie in 0..{self.depths[1]}",
                  exc_type=ContractViolation)
        if self.heads < 1 or self.widths[1] % self.heads != 0:
            error(f"widths[1]={self.widths[1]} is not divisible by {self.heads} heads",
                  exc_type=ContractViolation)
        if self.key_dim is not None and (self.key_dim < 1 or self.attn_ratio < 1):
            error(f"key_dim and attn_ratio must be positive, got {self}",
                  exc_type=ContractViolation)

    @property
    def attention_dims(self):
        """(key width, value width) per head."""
        if self.key_dim is None:
            d = self.widths[1] // self.heads
            return d, d
        return self.key_dim, self.key_dim * self.attn_ratio

    @property
    def descriptor(self):
        if self.name is not None:
            return f"eff:{self.name}"
        text = (f"eff:[{self.widths[0]},{self.widths[1]}]x[{self.depths[0]},{self.depths[1]}]"
                f":mb3d={self.mb3d_count}:heads={self.heads}")
        if self.key_dim is not None:
            text += f":kd={self.key_dim}:ar={self.attn_ratio}"
        return text

    @property
    def label(self):
        return f"Efficient({self.name})" if self.name else self.descriptor


def _preset(name, widths, depths, mb3d_count):
    return EfficientFormerConfig(widths, depths, mb3d_count=mb3d_count, heads=8,
                                 key_dim=32, attn_ratio=4, name=name)


EFFICIENT_PRESETS = {
    "l1": _preset("l1", (48, 96), (3, 4), 1),
    "l3": _preset("l3", (64, 128), (4, 6), 1),
    "l7": _preset("l7", (96, 192), (6, 8), 2),
    "l9": _preset("l9", (128, 256), (8, 10), 2),
}

# Trainable parameter counts published for the original networks.
PUBLISHED_PARAMETER_COUNTS = {
    "res:10x128": 2_967_525,
    "res:20x128": 5_924_325,
    "res:20x256": 23_645_029,
    "eff:l1": 674_885,
    "eff:l3": 1_381_541,
    "eff:l7": 3_581_573,
}

_RES = re.compile(r"^res:(\d+)x(\d+)$")
_EFF = re.compile(r"^eff:\[(\d+),(\d+)\]x\[(\d+),(\d+)\]:mb3d=(\d+):heads=(\d+)"
                  r"(?::kd=(\d+):ar=(\d+))?$")


def parse_descriptor(descriptor):
    """
    Parses an architecture descriptor.

    Args:
        descriptor: descriptor string (see module docstring)

    Returns:
        a `ResidualConfig` or `EfficientFormerConfig`
    """
    text = descriptor.strip().replace(" ", "")
    m = _RES.match(text)
    if m:
        return ResidualConfig(int(m.group(1)), int(m.group(2)))
    if text.startswith("eff:") and text[4:] in EFFICIENT_PRESETS:
        return EFFICIENT_PRESETS[text[4:]]
    m = _EFF.match(text)
    if m:
        w0, w1, d0, d1, mb3d, heads, kd, ar = m.groups()
        return EfficientFormerConfig((int(w0), int(w1)), (int(d0), int(d1)),
                                     mb3d_count=int(mb3d), heads=int(heads),
                                     key_dim=None if kd is None else int(kd),
                                     attn_ratio=1 if ar is None else int(ar))
    error(f"Malformed architecture descriptor \"{descriptor}\"", exc_type=ContractViolation)
