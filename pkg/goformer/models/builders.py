import numpy as np

from goformer.features.planeLayout import NUM_PLANES
from goformer.logger import info, analysis, ContractViolation, error
from goformer.models.configs import ResidualConfig, EfficientFormerConfig, parse_descriptor
from goformer.models.layers import ConvBN, Conv2d, ResidualBlock, MB4D, MB3D, PolicyHead, \
    ValueHead
from goformer.models.network import Network
from goformer.tensor import relu, gelu

VALUE_HIDDEN = 256


def _heads(net, channels, rng):
    net.policy_head = PolicyHead("policy", channels, rng)
    net.value_head = ValueHead("value", channels, rng, hidden=VALUE_HIDDEN)


def build_residual(config, seed=0):
    """
    Builds Residual(blocks, planes): a 3x3 conv + BN + relu stem, `blocks`
    residual blocks and the policy/value heads.

    Args:
        config: a `ResidualConfig`

        seed: initialization seed (default: 0)

    Returns:
        the `Network`
    """
    rng = np.random.default_rng(seed)
    with Network(config.descriptor) as net:
        net.stem = [ConvBN("stem", NUM_PLANES, config.planes, 3, rng, activation=relu)]
        net.trunk = [ResidualBlock(f"block.{i}", config.planes, rng)
                     for i in range(config.blocks)]
        _heads(net, config.planes, rng)
    info(f"Built {config.label} with {net.parameter_count()} parameters")
    return net


def build_efficientformer(config, seed=0):
    """
    Builds an EfficientFormer for 19x19 boards. Every layer runs at stride 1:
    a two-convolution stem, stage 1 of MB4D blocks, a 1x1 channel raise, then
    stage 2 of MB4D blocks ending in `mb3d_count` attention blocks, and the
    policy/value heads.

    Args:
        config: an `EfficientFormerConfig`

        seed: initialization seed (default: 0)

    Returns:
        the `Network`
    """
    rng = np.random.default_rng(seed)
    (w0, w1), (d0, d1) = config.widths, config.depths
    key_dim, value_dim = config.attention_dims
    with Network(config.descriptor) as net:
        net.stem = [ConvBN("stem.0", NUM_PLANES, max(w0 // 2, 1), 3, rng, activation=gelu),
                    ConvBN("stem.1", max(w0 // 2, 1), w0, 3, rng, activation=gelu)]
        trunk = [MB4D(f"stage1.{i}", w0, rng) for i in range(d0)]
        trunk.append(Conv2d("raise", w0, w1, 1, rng))
        for i in range(d1):
            if i < d1 - config.mb3d_count:
                trunk.append(MB4D(f"stage2.{i}", w1, rng))
            else:
                trunk.append(MB3D(f"stage2.{i}", w1, config.heads, key_dim, value_dim, rng))
        net.trunk = trunk
        _heads(net, w1, rng)
    info(f"Built {config.label} with {net.parameter_count()} parameters")
    return net


def build(config, seed=0):
    """
    Builds a network from a config or a descriptor string.
    """
    if isinstance(config, str):
        config = parse_descriptor(config)
    if isinstance(config, ResidualConfig):
        return build_residual(config, seed)
    if isinstance(config, EfficientFormerConfig):
        return build_efficientformer(config, seed)
    error(f"Cannot build a network from {config!r}", exc_type=ContractViolation)


def report_breakdown(net):
    for layer, count in net.parameter_breakdown().items():
        analysis(f"{net.descriptor:<24s}{layer:<16s}{count:>12,d}")
    analysis(f"{net.descriptor:<24s}{'total':<16s}{net.parameter_count():>12,d}")
