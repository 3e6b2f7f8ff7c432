import threading
from contextlib import contextmanager

import numpy as np

from goformer.logger import error, ContractViolation

_state = threading.local()
_default_dtype = np.float32


def get_default_dtype():
    return _default_dtype


def set_default_dtype(dtype):
    """
    Sets the dtype of newly created tensors. float32 is used for training and
    inference; float64 exists for gradient checking.
    """
    global _default_dtype
    dtype = np.dtype(dtype).type
    if dtype not in (np.float32, np.float64):
        error("Tensors support float32 and float64 only", exc_type=ContractViolation)
    _default_dtype = dtype


@contextmanager
def precision(dtype):
    """Temporarily changes the default tensor dtype."""
    previous = _default_dtype
    set_default_dtype(dtype)
    try:
        yield
    finally:
        set_default_dtype(previous)


class Tensor:
    """
    An N-dimensional float array with optional gradient. Operations on tensors
    record themselves on the active `Tape` when any input requires grad;
    without an active tape nothing is recorded (inference).
    """

    def __init__(self, data, requires_grad=False, name=None, dtype=None):
        if dtype is None:
            dtype = data.dtype if isinstance(data, np.ndarray) and \
                data.dtype in (np.float32, np.float64) else _default_dtype
        self.data = np.asarray(data, dtype=dtype)
        self.requires_grad = requires_grad
        self.grad = None
        self.name = name

    @property
    def shape(self):
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    @property
    def size(self):
        return self.data.size

    def numpy(self):
        return self.data

    def item(self):
        return float(self.data)

    def zero_grad(self):
        self.grad = None

    def astype(self, dtype):
        self.data = self.data.astype(dtype)
        if self.grad is not None:
            self.grad = self.grad.astype(dtype)
        return self

    def _lift(self, other):
        if isinstance(other, Tensor):
            return other
        return Tensor(np.asarray(other, dtype=self.dtype))

    def __add__(self, other):
        from goformer.tensor.operations.elementwise import add
        return add(self, self._lift(other))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        from goformer.tensor.operations.elementwise import sub
        return sub(self, self._lift(other))

    def __rsub__(self, other):
        from goformer.tensor.operations.elementwise import sub
        return sub(self._lift(other), self)

    def __mul__(self, other):
        from goformer.tensor.operations.elementwise import mul
        return mul(self, self._lift(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        return self.__mul__(-1.0)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Tensor{label} shape={self.shape} dtype={self.dtype} grad={self.requires_grad}>"


class _Node:
    __slots__ = ("op", "ctx", "inputs", "output")

    def __init__(self, op, ctx, inputs, output):
        self.op = op
        self.ctx = ctx
        self.inputs = inputs
        self.output = output


class Tape:
    """
    Ordered record of executed operations. Used as a context manager, the
    tape is active for the current thread only, so distinct networks can be
    trained concurrently from different threads.

    | with Tape() as tape:
    |     loss = ...
    | backward(tape, loss)
    """

    def __init__(self):
        self.nodes = []

    def record(self, node):
        self.nodes.append(node)

    def __len__(self):
        return len(self.nodes)

    def __enter__(self):
        stack = getattr(_state, "tapes", None)
        if stack is None:
            stack = _state.tapes = []
        stack.append(self)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        _state.tapes.pop()


def current_tape():
    stack = getattr(_state, "tapes", None)
    return stack[-1] if stack else None


@contextmanager
def no_grad():
    """Suspends recording for the current thread."""
    stack = getattr(_state, "tapes", None)
    saved = list(stack) if stack else []
    _state.tapes = []
    try:
        yield
    finally:
        _state.tapes = saved


def backward(tape, loss):
    """
    Reverse-mode sweep over the tape, in strict reverse execution order.
    Gradients accumulate additively into `.grad` of every tensor that
    requires grad.

    Args:
        tape: the `Tape` the loss was computed under

        loss: a scalar `Tensor`

    Returns:
        dict mapping each leaf tensor that requires grad to its gradient
    """
    if loss.data.size != 1:
        error("backward expects a scalar loss, got shape", loss.shape,
              exc_type=ContractViolation)
    loss.grad = np.ones_like(loss.data)
    produced = set()
    leaves = {}
    for node in reversed(tape.nodes):
        produced.add(id(node.output))
        grad = node.output.grad
        if grad is None:
            continue
        grads = node.op.gradient(node.ctx, grad)
        for inp, g in zip(node.inputs, grads):
            if g is None or not inp.requires_grad:
                continue
            g = np.asarray(g, dtype=inp.dtype)
            if inp.grad is None:
                inp.grad = g.copy()
            else:
                inp.grad += g
            leaves[id(inp)] = inp
    return {t: t.grad for key, t in leaves.items() if key not in produced}
