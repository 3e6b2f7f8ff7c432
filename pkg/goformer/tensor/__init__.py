from .tensor import Tensor, Tape, backward, no_grad, current_tape, precision, \
    get_default_dtype, set_default_dtype
from .operations import *
from .optim import AdamState, adam_step, CosineSchedule, cosine_lr
from .gradcheck import check_gradients, numerical_gradient, relative_error
