import numpy as np

from goformer.features.planeLayout import BOARD_SIZE, NUM_POINTS
from goformer.models.component import Component
from goformer.models.parameter import Parameter
from goformer.tensor import conv2d_same, dense, batch_norm, layer_norm, relu, gelu, \
    sigmoid, avg_pool3x3_same, global_avg_pool, mhsa, gather_bias, relative_offset_index, \
    reshape, to_tokens, to_map, get_default_dtype


def he_normal(rng, shape, fan_in):
    return rng.normal(0.0, np.sqrt(2.0 / fan_in), size=shape).astype(get_default_dtype())


def zeros(shape):
    return np.zeros(shape, dtype=get_default_dtype())


def ones(shape):
    return np.ones(shape, dtype=get_default_dtype())


class Conv2d(Component):
    """Same-padded stride-1 convolution with bias."""

    def __init__(self, name, in_channels, out_channels, kernel_size, rng):
        super().__init__(name)
        fan_in = in_channels * kernel_size * kernel_size
        self.weight = Parameter(he_normal(rng, (out_channels, in_channels, kernel_size,
                                                kernel_size), fan_in))
        self.bias = Parameter(zeros(out_channels))

    def forward(self, x, training=False):
        return conv2d_same(x, self.weight, self.bias)


class BatchNorm(Component):
    def __init__(self, name, channels, momentum=0.9):
        super().__init__(name)
        self.momentum = momentum
        self.gamma = Parameter(ones(channels))
        self.beta = Parameter(zeros(channels))
        self.running_mean = Parameter(zeros(channels), trainable=False)
        self.running_var = Parameter(ones(channels), trainable=False)

    def forward(self, x, training=False):
        return batch_norm(x, self.gamma, self.beta, running_mean=self.running_mean.data,
                          running_var=self.running_var.data, training=training,
                          momentum=self.momentum)


class LayerNorm(Component):
    def __init__(self, name, channels):
        super().__init__(name)
        self.gamma = Parameter(ones(channels))
        self.beta = Parameter(zeros(channels))

    def forward(self, x, training=False):
        return layer_norm(x, self.gamma, self.beta)


class Dense(Component):
    def __init__(self, name, in_features, out_features, rng):
        super().__init__(name)
        self.weight = Parameter(he_normal(rng, (out_features, in_features), in_features))
        self.bias = Parameter(zeros(out_features))

    def forward(self, x, training=False):
        return dense(x, self.weight, self.bias)


class ConvBN(Component):
    """Convolution, batch norm and an optional activation."""

    def __init__(self, name, in_channels, out_channels, kernel_size, rng, activation=None):
        super().__init__(name)
        self.conv = Conv2d(name + "/conv", in_channels, out_channels, kernel_size, rng)
        self.bn = BatchNorm(name + "/bn", out_channels)
        self.activation = activation

    def forward(self, x, training=False):
        x = self.bn(self.conv(x), training=training)
        return x if self.activation is None else self.activation(x)


class ResidualBlock(Component):
    """
    conv3x3 + BN + relu + conv3x3 + BN, added to the block input, then relu.
    """

    def __init__(self, name, planes, rng):
        super().__init__(name)
        self.branch1 = ConvBN(name + "/conv1", planes, planes, 3, rng, activation=relu)
        self.branch2 = ConvBN(name + "/conv2", planes, planes, 3, rng)

    def forward(self, x, training=False):
        return relu(self.branch2(self.branch1(x, training), training) + x)


class MB4D(Component):
    """
    Pooling meta-block on 19x19 maps: x + (pool(x) - x), then a residual
    ConvFFN (1x1 expand, BN, gelu, 1x1 project, BN).
    """

    def __init__(self, name, dim, rng, mlp_ratio=4):
        super().__init__(name)
        hidden = dim * mlp_ratio
        self.fc1 = ConvBN(name + "/fc1", dim, hidden, 1, rng, activation=gelu)
        self.fc2 = ConvBN(name + "/fc2", hidden, dim, 1, rng)

    def forward(self, x, training=False):
        x = x + (avg_pool3x3_same(x) - x)
        return x + self.fc2(self.fc1(x, training), training)


class Attention(Component):
    """
    Multi-head self-attention over the 361 board tokens. The positional
    bias is a per-head table over the absolute row/column offset between two
    points, expanded to the full (heads, 361, 361) bias on each call.
    """

    def __init__(self, name, dim, heads, key_dim, value_dim, rng):
        super().__init__(name)
        self.heads = heads
        qk, v = heads * key_dim, heads * value_dim
        self.wq = Parameter(he_normal(rng, (qk, dim), dim))
        self.bq = Parameter(zeros(qk))
        self.wk = Parameter(he_normal(rng, (qk, dim), dim))
        self.bk = Parameter(zeros(qk))
        self.wv = Parameter(he_normal(rng, (v, dim), dim))
        self.bv = Parameter(zeros(v))
        self.wo = Parameter(he_normal(rng, (dim, v), v))
        self.bo = Parameter(zeros(dim))
        self.attention_bias = Parameter(zeros((heads, NUM_POINTS)))
        self.offset_index = relative_offset_index(BOARD_SIZE, BOARD_SIZE)

    def forward(self, x, training=False):
        bias = gather_bias(self.attention_bias, index=self.offset_index)
        return mhsa(x, self.wq, self.bq, self.wk, self.bk, self.wv, self.bv,
                    self.wo, self.bo, bias, heads=self.heads)


class MB3D(Component):
    """
    Attention meta-block on 361 tokens: x + mhsa(ln(x)), then
    x + mlp(ln(x)) with a gelu MLP. Takes and returns 19x19 maps.
    """

    def __init__(self, name, dim, heads, key_dim, value_dim, rng, mlp_ratio=4):
        super().__init__(name)
        self.norm1 = LayerNorm(name + "/norm1", dim)
        self.attention = Attention(name + "/attention", dim, heads, key_dim, value_dim, rng)
        self.norm2 = LayerNorm(name + "/norm2", dim)
        self.fc1 = Dense(name + "/fc1", dim, dim * mlp_ratio, rng)
        self.fc2 = Dense(name + "/fc2", dim * mlp_ratio, dim, rng)

    def forward(self, x, training=False):
        height, width = x.shape[2:]
        t = to_tokens(x)
        t = t + self.attention(self.norm1(t))
        t = t + self.fc2(gelu(self.fc1(self.norm2(t))))
        return to_map(t, height, width)


class PolicyHead(Component):
    """1x1 convolution to one plane, flattened to 361 logits."""

    def __init__(self, name, channels, rng):
        super().__init__(name)
        self.conv = Conv2d(name + "/conv", channels, 1, 1, rng)

    def forward(self, x, training=False):
        return reshape(self.conv(x), shape=(x.shape[0], NUM_POINTS))


class ValueHead(Component):
    """Global average pooling, dense + relu, dense + sigmoid: White's win value."""

    def __init__(self, name, channels, rng, hidden=256):
        super().__init__(name)
        self.fc1 = Dense(name + "/fc1", channels, hidden, rng)
        self.fc2 = Dense(name + "/fc2", hidden, 1, rng)

    def forward(self, x, training=False):
        return sigmoid(self.fc2(relu(self.fc1(global_avg_pool(x)))))
