from abc import abstractmethod, ABC

from goformer.tensor.tensor import Tensor, _Node, current_tape


class OpContext:
    """
    Scratch space shared by the forward and backward passes of one op call.
    `recording` tells the forward pass whether a backward pass will follow,
    so it can skip saving intermediates during inference.
    """

    def __init__(self, recording):
        self.recording = recording
        self.saved = {}

    def save(self, **values):
        if self.recording:
            self.saved.update(values)

    def __getattr__(self, item):
        try:
            return self.__dict__["saved"][item]
        except KeyError:
            raise AttributeError(item) from None


class BaseOp(ABC):
    """
    Base class of every differentiable tensor operation. An operation is a
    pair of pure functions: `operation` maps input arrays (and keyword
    attributes) to the output array, `gradient` maps the output gradient to
    one gradient per input (None for inputs without a gradient, such as
    integer targets).

    Calling an op class applies it: `relu(x)` returns a new `Tensor`, and when
    a `Tape` is active and any input requires grad the call is recorded on it.
    """

    @staticmethod
    @abstractmethod
    def operation(ctx, *sources, **attrs):
        """
        Runtime logic of the operation.

        Args:
            ctx: the `OpContext` of this call; forward saves what backward needs

            *sources: numpy arrays of the input tensors, in call order

            **attrs: non-tensor attributes of the call

        Returns:
            the output array
        """
        pass

    @staticmethod
    @abstractmethod
    def gradient(ctx, grad):
        """
        Backward logic of the operation.

        Args:
            ctx: the `OpContext` filled by `operation`

            grad: gradient of the loss with respect to the output

        Returns:
            tuple with one gradient (or None) per source
        """
        pass

    def __new__(cls, *sources, **attrs):
        return cls.apply(*sources, **attrs)

    @classmethod
    def apply(cls, *sources, **attrs):
        tape = current_tape()
        recording = tape is not None and any(s.requires_grad for s in sources)
        ctx = OpContext(recording)
        out = cls.operation(ctx, *[s.data for s in sources], **attrs)
        result = Tensor(out, requires_grad=recording, dtype=out.dtype)
        if recording:
            tape.record(_Node(cls, ctx, sources, result))
        return result
