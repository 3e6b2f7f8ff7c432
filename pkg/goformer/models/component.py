from abc import abstractmethod

from goformer.models.metaComponent import MetaComponent


class Component(metaclass=MetaComponent):
    """
    Components are the building blocks of networks. A component owns its
    parameters as attributes of type `Parameter` (weights and buffers) and
    may hold other components as sub-layers; every component built inside a
    `with Network(...)` block is registered in that network, so parameter
    names are unique across the whole network.
    """

    def __init__(self, name, **kwargs):
        """
        Args:
            name: the name of the component, unique within its network; sub-layer
                names extend it with `/`
        """
        self.name = name

    ## Runtime Methods
    def __call__(self, x, training=False):
        return self.forward(x, training=training)

    @property
    def parameters(self):
        """Parameters owned directly by this component."""
        return list(self._parameters)

    def parameter_count(self):
        return sum(p.size for p in self._parameters if p.trainable)

    ## Abstract Methods
    @abstractmethod
    def forward(self, x, training=False):
        """
        Applies the component.

        Args:
            x: input `Tensor`

            training: batch statistics and running-stat updates in normalization
                layers (default: False)
        """
        pass

    def __repr__(self):
        return f"{self.__class__.__name__}({self.name})"
