from dataclasses import dataclass
from collections import OrderedDict

import numpy as np

from goformer.features.planeLayout import BOARD_SIZE, NUM_PLANES, NUM_POINTS
from goformer.logger import error, warn, ContractViolation
from goformer.tensor import Tensor, no_grad
from goformer.utils import enter_network, exit_network


@dataclass
class PolicyValueOutput:
    """Network output: policy logits (B, 361) and White's win value (B, 1)."""
    policy_logits: Tensor
    value: Tensor


class Network:
    """
    A network is the registry of every component and parameter built inside
    its `with` block, plus the forward graph assembled by a builder:

    | with Network("res:10x128") as net:
    |     net.stem = [...]
    |     net.trunk = [...]
    |     net.policy_head, net.value_head = ...

    Parameter names are unique within a network. Every feature map between the
    stem and the heads keeps the 19x19 board size; `forward` checks it.
    """

    def __init__(self, descriptor):
        """
        Args:
            descriptor: architecture descriptor string, stored in checkpoints
        """
        self.descriptor = descriptor
        self.components = OrderedDict()
        self.params = OrderedDict()
        self.stem = []
        self.trunk = []
        self.policy_head = None
        self.value_head = None

    def __enter__(self):
        enter_network(self)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        exit_network()

    ## Registry
    def add_component(self, component):
        """
        Adds a component and its parameters to the network

        Args:
            component: the component being added
        """
        if component.name in self.components:
            error(f"Component name {component.name} already used in {self.descriptor}",
                  exc_type=ContractViolation)
        self.components[component.name] = component
        for param in component.parameters:
            if param.name in self.params:
                error(f"Parameter name {param.name} already used in {self.descriptor}",
                      exc_type=ContractViolation)
            self.params[param.name] = param

    def get_components(self, *component_names):
        found = []
        for name in component_names:
            if name in self.components:
                found.append(self.components[name])
            else:
                warn(f"Could not find a component with the name \"{name}\" in the network")
        return found[0] if len(found) == 1 else found

    def trainable_parameters(self):
        return [p for p in self.params.values() if p.trainable]

    def parameter_count(self):
        return parameter_count(self)

    def parameter_breakdown(self):
        """
        Trainable parameter count per top-level layer, in build order.

        Returns:
            ordered dict mapping layer name to count
        """
        breakdown = OrderedDict()
        for param in self.trainable_parameters():
            layer = param.name.split("/")[0]
            breakdown[layer] = breakdown.get(layer, 0) + param.size
        return breakdown

    def to_dtype(self, dtype):
        """Converts every parameter and buffer to the given float dtype."""
        for param in self.params.values():
            param.astype(dtype)
        return self

    def zero_grad(self):
        for param in self.params.values():
            param.zero_grad()

    ## Runtime Methods
    def forward(self, planes, mode="eval", trace=None):
        return forward(self, planes, mode=mode, trace=trace)

    def __call__(self, planes, mode="eval"):
        return forward(self, planes, mode=mode)

    def predict(self, planes):
        """
        Eval-mode inference on numpy input, without recording gradients.

        Args:
            planes: (B, 31, 19, 19) array

        Returns:
            (policy_logits (B, 361), value (B,)) as numpy arrays
        """
        with no_grad():
            out = forward(self, planes, mode="eval")
        return out.policy_logits.data, out.value.data[:, 0]

    def __repr__(self):
        return f"Network({self.descriptor}, {self.parameter_count()} parameters)"


def _check_map(x, name, trace):
    if x.shape[2:] != (BOARD_SIZE, BOARD_SIZE):
        error(f"{name} produced a {x.shape[2:]} map; every layer must keep "
              f"{BOARD_SIZE}x{BOARD_SIZE}", exc_type=ContractViolation)
    if trace is not None:
        trace.append((name, x.shape))


def forward(net, planes, mode="eval", trace=None):
    """
    Runs the network.

    Args:
        net: the `Network`

        planes: (B, 31, 19, 19) input, numpy array or `Tensor`

        mode: "train" (batch statistics, running stats updated) or "eval"

        trace: optional list receiving (layer name, output shape) pairs

    Returns:
        a `PolicyValueOutput`
    """
    if mode not in ("train", "eval"):
        error(f"Unknown forward mode {mode}", exc_type=ContractViolation)
    x = planes if isinstance(planes, Tensor) else Tensor(np.asarray(planes))
    if x.data.ndim != 4 or x.shape[1:] != (NUM_PLANES, BOARD_SIZE, BOARD_SIZE):
        error(f"Network input must be (B, {NUM_PLANES}, {BOARD_SIZE}, {BOARD_SIZE}), "
              f"got {x.shape}", exc_type=ContractViolation)
    dtype = net.params[next(iter(net.params))].dtype
    if x.dtype != dtype:
        x = Tensor(x.data.astype(dtype), requires_grad=x.requires_grad)
    training = mode == "train"
    for layer in net.stem + net.trunk:
        x = layer(x, training=training)
        _check_map(x, layer.name, trace)
    policy = net.policy_head(x, training=training)
    value = net.value_head(x, training=training)
    if policy.shape != (x.shape[0], NUM_POINTS):
        error(f"Policy head produced {policy.shape}", exc_type=ContractViolation)
    return PolicyValueOutput(policy, value)


def parameter_count(net):
    """Exact number of trainable scalars of a network."""
    return int(sum(p.size for p in net.trainable_parameters()))
