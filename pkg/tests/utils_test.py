import json
import pathlib
import sys

# NOTE: the package is installed with `pip install -e .` in CI; the path is
# added so the tests also run from a plain checkout
sys.path.append(str(pathlib.Path(__file__).parent.parent))

import pytest

from goformer import configure
from goformer.configManager import set_config, get_config, get_setting, provide_namespace
from goformer.harness import TrainingConfig
from goformer.logger import error, ContractViolation
from goformer.search import SearchConfig
from goformer.utils import make_run_dir, run_name


@pytest.fixture
def clean_config():
  yield
  set_config(None)


class ConfigTest:

  def test_sections_and_defaults(self, clean_config):
    set_config({"search": {"c_puct": 2.0}})
    assert get_config("search") == {"c_puct": 2.0}
    assert get_config("training") is None
    assert get_setting("search", "c_puct", 1.25) == 2.0
    assert get_setting("search", "eval_batch", 8) == 8
    assert provide_namespace("search").c_puct == 2.0
    set_config(None)
    assert get_setting("search", "c_puct", 1.25) == 1.25

  def test_overrides_win_over_sections(self, clean_config):
    set_config({"search": {"c_puct": 2.0, "playouts": 50},
                "training": {"epochs": 3, "unknown_key": 1}})
    assert SearchConfig.from_config().c_puct == 2.0
    assert SearchConfig.from_config(c_puct=0.5, playouts=None).playouts == 50
    assert TrainingConfig.from_config().epochs == 3

  def test_configure_reads_the_file(self, clean_config, tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"logging": {"logging_level": "WARNING", "hide_console": True},
                                "bench": {"runs": 3}}))
    configure(["--config", str(path), "--other", "ignored"])
    assert get_setting("bench", "runs", 7) == 3


class LoggerTest:

  def test_error_raises_the_requested_type(self):
    with pytest.raises(ContractViolation, match="bad size 4"):
      error("bad size", 4, exc_type=ContractViolation)
    with pytest.raises(RuntimeError):
      error("plain failure")


class RunDirTest:

  def test_names(self):
    assert run_name("train", "res:10x128") == "train_res_10x128"
    assert run_name("train", "eff:[8,16]x[1,1]:mb3d=1:heads=2") == \
        "train_eff_8_16_x_1_1_mb3d_1_heads_2"

  def test_runs_never_overwrite(self, tmp_path):
    cfg = TrainingConfig(epochs=2)
    first = pathlib.Path(make_run_dir(tmp_path, "train", "eff:l1", cfg))
    second = pathlib.Path(make_run_dir(tmp_path, "train", "eff:l1", {"eta0": 1e-3, "f": len}))
    assert first.name == "train_eff_l1" and second.name.startswith("train_eff_l1_")
    record = json.loads((first / "run.json").read_text())
    assert record["network"] == "eff:l1" and record["settings"]["epochs"] == 2
    assert json.loads((second / "run.json").read_text())["settings"] == {"eta0": 1e-3}
