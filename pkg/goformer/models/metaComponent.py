from goformer.logger import debug
from goformer.models.parameter import Parameter
from goformer.utils import get_current_network


class MetaComponent(type):
    """
    This is the metaclass for network components. It wraps the constructor of
    every component so that, once the component is built, its parameters are
    named after it and the component and its parameters are registered in the
    network currently under construction (the innermost `with Network(...)`
    block of this thread).
    """

    @staticmethod
    def pre_init(self, name, *args, **kwargs):
        """
        Called before the classes default init
        """
        self._meta_init = True

    @staticmethod
    def post_init(self, *args, **kwargs):
        """
        Called after the classes default init
        """
        params = []
        for key, value in self.__dict__.items():
            if Parameter.is_parameter(value):
                value._setup(self, key)
                params.append(value)
        self._parameters = params
        network = get_current_network()
        if network is not None:
            network.add_component(self)
        else:
            debug(f"Component {self.name} built outside of a network")

    def __new__(cls, *clargs, **clkwargs):
        """
        Wraps the class adding a pre/post-init method
        """
        x = super().__new__(cls, *clargs, **clkwargs)

        x._orig_init = x.__init__

        def wrapped_init(self, *args, **kwargs):
            if self.__dict__.get("_meta_init", False):
                x._orig_init(self, *args, **kwargs)
            else:
                cls.pre_init(self, *args, **kwargs)
                x._orig_init(self, *args, **kwargs)
                cls.post_init(self, *args, **kwargs)

        x.__init__ = wrapped_init
        return x
