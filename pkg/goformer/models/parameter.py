import numpy as np

from goformer.logger import error, ContractViolation
from goformer.tensor import Tensor


class Parameter(Tensor):
    """
    Parameters are the stateful arrays of components: trainable weights and
    the non-trainable buffers (batch-norm running statistics) that travel
    with them in checkpoints. A parameter gets its name when the component
    that owns it finishes construction; the name is the component name
    followed by the attribute name, e.g. `trunk.3/conv1/weight`.
    """

    @classmethod
    def is_parameter(cls, obj):
        return isinstance(obj, Parameter)

    def __init__(self, initial_value, trainable=True):
        """
        Args:
            initial_value: initial array of the parameter

            trainable: whether the optimizer updates it; buffers are not
                trainable (default: True)
        """
        super().__init__(initial_value, requires_grad=trainable)
        self.trainable = trainable

    def _setup(self, component, key):
        """
        Finishes initializing the parameter, called by the component that
        builds it (handled automatically)
        """
        self.name = component.name + "/" + key

    def set(self, value):
        """
        Overwrites the value, keeping shape and dtype.

        Args:
            value: the new array
        """
        value = np.asarray(value)
        if value.shape != self.data.shape:
            error(f"Cannot assign shape {value.shape} to parameter {self.name} "
                  f"of shape {self.data.shape}", exc_type=ContractViolation)
        self.data = value.astype(self.data.dtype, copy=True)

    def __repr__(self):
        kind = "param" if self.trainable else "buffer"
        return f"[{self.name} {kind} {self.shape}]"
