import pathlib
import sys

# NOTE: the package is installed with `pip install -e .` in CI; the path is
# added so the tests also run from a plain checkout
sys.path.append(str(pathlib.Path(__file__).parent.parent))

import numpy as np
import pytest

from goformer.logger import ContractViolation
from goformer.models import build, forward, parse_descriptor, ResidualConfig, \
    EfficientFormerConfig, EFFICIENT_PRESETS, PUBLISHED_PARAMETER_COUNTS, Network, Dense, \
    ResidualBlock, MB3D, save_checkpoint, load_checkpoint, read_checkpoint
from goformer.tensor import Tensor, softmax_array

MICRO_EFFICIENT = "eff:[8,16]x[1,1]:mb3d=1:heads=2"


def random_planes(batch, seed):
    rng = np.random.default_rng(seed)
    return (rng.uniform(size=(batch, 31, 19, 19)) < 0.3).astype(np.float32)


class ShapeTest:

  @pytest.mark.parametrize("descriptor", ["res:10x128", "eff:l1"])
  def test_every_map_keeps_the_board(self, descriptor):
    net = build(descriptor, seed=0)
    trace = []
    out = forward(net, random_planes(2, 0), mode="train", trace=trace)
    assert len(trace) == len(net.stem) + len(net.trunk)
    assert all(shape[2:] == (19, 19) for _, shape in trace)
    assert out.policy_logits.shape == (2, 361)
    assert out.value.shape == (2, 1)
    assert ((out.value.data >= 0) & (out.value.data <= 1)).all()
    assert np.isfinite(out.policy_logits.data).all()

  def test_smallest_residual(self):
    policy, value = build("res:1x8").predict(random_planes(2, 1))
    assert policy.shape == (2, 361) and value.shape == (2,)

  def test_pooling_only_efficientformer(self):
    net = build("eff:[8,16]x[1,2]:mb3d=0:heads=2")
    assert not any(isinstance(c, MB3D) for c in net.components.values())
    policy, value = net.predict(random_planes(1, 2))
    assert policy.shape == (1, 361) and 0 < value[0] < 1

  def test_value_range_and_policy_softmax(self):
    net = build("res:1x8", seed=4)
    for seed in range(100):
      policy, value = net.predict(random_planes(1, seed))
      assert 0 < value[0] < 1
      assert softmax_array(policy.astype(np.float64)).sum() == pytest.approx(1.0, abs=1e-6)

  def test_eval_is_deterministic(self):
    net = build(MICRO_EFFICIENT, seed=5)
    planes = random_planes(3, 5)
    first, second = net.predict(planes), net.predict(planes)
    assert first[0].tobytes() == second[0].tobytes()
    assert first[1].tobytes() == second[1].tobytes()

  def test_rejects_wrong_input(self):
    net = build("res:1x8")
    with pytest.raises(ContractViolation):
      net.predict(np.zeros((1, 31, 9, 9), np.float32))
    with pytest.raises(ContractViolation):
      net.predict(np.zeros((1, 30, 19, 19), np.float32))
    with pytest.raises(ContractViolation):
      forward(net, random_planes(1, 0), mode="infer")

  def test_residual_skip_path(self):
    block = ResidualBlock("skip", 4, np.random.default_rng(0))
    block.branch2.bn.gamma.set(np.zeros(4))
    block.branch2.bn.beta.set(np.zeros(4))
    x = Tensor(np.random.default_rng(1).normal(size=(2, 4, 19, 19)).astype(np.float32))
    assert np.array_equal(block(x).data, np.maximum(x.data, 0))


class ParameterCountTest:

  def test_single_dense(self):
    with Network("toy") as net:
      Dense("dense", 4, 3, np.random.default_rng(0))
    assert net.parameter_count() == 15

  def test_small_residual_by_hand(self):
    stem = 31 * 8 * 9 + 8 + 2 * 8
    block = 2 * (8 * 8 * 9 + 8 + 2 * 8)
    heads = (8 + 1) + (8 * 256 + 256) + (256 + 1)
    net = build("res:1x8")
    assert net.parameter_count() == stem + block + heads
    assert sum(net.parameter_breakdown().values()) == net.parameter_count()
    assert list(net.parameter_breakdown()) == ["stem", "block.0", "policy", "value"]

  def test_buffers_are_not_counted(self):
    net = build("res:1x8")
    buffers = [p for p in net.params.values() if not p.trainable]
    assert {p.name.rsplit("/", 1)[1] for p in buffers} == {"running_mean", "running_var"}
    assert len(net.params) == len(net.trainable_parameters()) + len(buffers)

  def test_calibrated_presets(self):
    assert build("eff:l1").parameter_count() == 655_002
    assert build("res:10x128").parameter_count() == 3_026_306

  @pytest.mark.parametrize("descriptor", sorted(PUBLISHED_PARAMETER_COUNTS))
  def test_within_tolerance_of_published(self, descriptor):
    count = build(descriptor).parameter_count()
    published = PUBLISHED_PARAMETER_COUNTS[descriptor]
    assert abs(count - published) <= 0.2 * published

  def test_ordering(self):
    efficient = [build(f"eff:{name}").parameter_count() for name in ("l1", "l3", "l7", "l9")]
    assert efficient == sorted(set(efficient))
    residual = [build(d).parameter_count() for d in ("res:10x128", "res:20x128", "res:20x256")]
    assert residual == sorted(set(residual))


class DescriptorTest:

  def test_parse(self):
    assert parse_descriptor("res:10x128") == ResidualConfig(10, 128)
    assert parse_descriptor("eff:l3") is EFFICIENT_PRESETS["l3"]
    config = parse_descriptor("eff:[8,16]x[1,2]:mb3d=1:heads=2")
    assert config == EfficientFormerConfig((8, 16), (1, 2), mb3d_count=1, heads=2)
    assert config.attention_dims == (8, 8)
    wide = parse_descriptor("eff:[8,16]x[1,2]:mb3d=1:heads=2:kd=4:ar=3")
    assert wide.attention_dims == (4, 12)

  @pytest.mark.parametrize("config", [ResidualConfig(3, 16), EFFICIENT_PRESETS["l7"],
                                      EfficientFormerConfig((8, 16), (2, 3), mb3d_count=2,
                                                            heads=4, key_dim=8, attn_ratio=2)])
  def test_descriptor_identifies_config(self, config):
    assert parse_descriptor(config.descriptor) == config

  @pytest.mark.parametrize("text", ["res:0x128", "res:10", "eff:l2", "conv:3x3",
                                    "eff:[8,18]x[1,1]:mb3d=1:heads=4",
                                    "eff:[8,16]x[1,1]:mb3d=2:heads=2"])
  def test_malformed(self, text):
    with pytest.raises(ContractViolation):
      parse_descriptor(text)


class CheckpointTest:

  @pytest.mark.parametrize("descriptor", ["res:1x8", MICRO_EFFICIENT])
  def test_round_trip(self, descriptor, tmp_path):
    net = build(descriptor, seed=7)
    forward(net, random_planes(4, 7), mode="train")
    path = tmp_path / "net.gowt"
    save_checkpoint(net, path)
    back = load_checkpoint(path)
    assert back.descriptor == descriptor
    assert back.parameter_count() == net.parameter_count()
    for name, param in net.params.items():
      assert back.params[name].data.tobytes() == param.data.tobytes()
    planes = random_planes(2, 8)
    for a, b in zip(net.predict(planes), back.predict(planes)):
      assert a.tobytes() == b.tobytes()

  def test_read_without_building(self, tmp_path):
    net = build("res:1x8")
    save_checkpoint(net, tmp_path / "a.gowt")
    descriptor, arrays = read_checkpoint(tmp_path / "a.gowt")
    assert descriptor == "res:1x8"
    assert list(arrays) == list(net.params)
    assert arrays["stem/bn/running_var"][0] is False

  def test_bad_magic(self, tmp_path):
    path = tmp_path / "bad.gowt"
    path.write_bytes(b"GOTR" + bytes(16))
    with pytest.raises(ContractViolation):
      read_checkpoint(path)

  def test_truncated(self, tmp_path):
    save_checkpoint(build("res:1x8"), tmp_path / "a.gowt")
    blob = (tmp_path / "a.gowt").read_bytes()
    (tmp_path / "cut.gowt").write_bytes(blob[:len(blob) // 2])
    with pytest.raises(ContractViolation):
      load_checkpoint(tmp_path / "cut.gowt")
