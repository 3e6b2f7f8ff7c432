from .baseOp import BaseOp, OpContext
from .elementwise import add, sub, mul, summation, mean
from .shape import reshape, transpose, to_tokens, to_map
from .activations import relu, gelu, sigmoid, softmax, softmax_array
from .linear import conv2d_same, dense
from .normalization import batch_norm, layer_norm
from .pooling import avg_pool3x3_same, global_avg_pool
from .attention import mhsa, gather_bias, relative_offset_index
from .losses import cross_entropy, mse, log_softmax_array
