import numpy as np

from goformer.tensor.tensor import Tape, backward, no_grad

STEP = 1e-5
TOLERANCE = 1e-4


def numerical_gradient(loss_fn, tensor, step=STEP):
    """
    Central finite differences of a scalar loss with respect to one tensor.
    The tensor data is perturbed in place and restored.
    """
    grad = np.zeros_like(tensor.data, dtype=np.float64)
    flat = tensor.data.reshape(-1)
    out = grad.reshape(-1)
    with no_grad():
        for i in range(flat.size):
            saved = flat[i]
            flat[i] = saved + step
            plus = float(loss_fn().data)
            flat[i] = saved - step
            minus = float(loss_fn().data)
            flat[i] = saved
            out[i] = (plus - minus) / (2.0 * step)
    return grad


def relative_error(analytic, numeric):
    diff = np.linalg.norm(analytic - numeric)
    scale = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    return 0.0 if scale == 0.0 else float(diff / scale)


def check_gradients(loss_fn, tensors, step=STEP):
    """
    Compares analytic gradients against central differences. Run it in
    float64 (see `goformer.tensor.precision`).

    Args:
        loss_fn: callable with no arguments computing a scalar `Tensor` from
            the given tensors

        tensors: tensors with requires_grad set

        step: finite-difference step (default: 1e-5)

    Returns:
        list of relative errors, one per tensor
    """
    for t in tensors:
        t.zero_grad()
    with Tape() as tape:
        loss = loss_fn()
    backward(tape, loss)
    analytic = [np.zeros_like(t.data) if t.grad is None else t.grad.copy() for t in tensors]
    return [relative_error(a, numerical_gradient(loss_fn, t, step))
            for a, t in zip(analytic, tensors)]
