from .parameter import Parameter
from .component import Component
from .layers import Conv2d, BatchNorm, LayerNorm, Dense, ConvBN, ResidualBlock, MB4D, MB3D, \
    Attention, PolicyHead, ValueHead
from .network import Network, PolicyValueOutput, forward, parameter_count
from .configs import ResidualConfig, EfficientFormerConfig, EFFICIENT_PRESETS, \
    PUBLISHED_PARAMETER_COUNTS, parse_descriptor
from .builders import build_residual, build_efficientformer, build, report_breakdown
from .checkpoint import save_checkpoint, load_checkpoint, read_checkpoint
