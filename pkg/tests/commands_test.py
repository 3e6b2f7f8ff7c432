import csv
import json
import pathlib
import sys

# NOTE: the package is installed with `pip install -e .` in CI; the path is
# added so the tests also run from a plain checkout
sys.path.append(str(pathlib.Path(__file__).parent.parent))

import pytest

from goformer.__main__ import main
from goformer.commands import csv_list, parse_budget
from goformer.configManager import set_config
from goformer.features import read_records
from goformer.models import load_checkpoint

FIVE_MOVES = b"(;GM[1]FF[4]SZ[19]KM[7.5]RE[B+R];B[pd];W[dp];B[pp];W[dd];B[qf])"


@pytest.fixture
def config_file(tmp_path):
  path = tmp_path / "config.json"
  path.write_text(json.dumps({"logging": {"logging_level": "WARNING", "hide_console": True}}))
  yield str(path)
  set_config(None)


class ArgumentTest:

  def test_budgets(self):
    assert parse_budget("200") == (200, None)
    assert parse_budget("1.5") == (None, 1.5)
    assert parse_budget("2s") == (None, 2.0)

  def test_csv_list(self):
    assert csv_list(int)("1,32,1024") == [1, 32, 1024]
    assert csv_list(str)("eff:l1,res:10x128,") == ["eff:l1", "res:10x128"]


class CommandLineTest:

  def test_params_report(self, config_file, tmp_path, capsys):
    report = tmp_path / "params.csv"
    assert main(["--config", config_file, "params", "--arch", "res:1x8,res:10x128",
                 "--report", str(report)]) == 0
    with open(report, newline="") as fp:
      rows = list(csv.DictReader(fp))
    assert [r["parameters"] for r in rows] == ["6026", "3026306"]
    assert (tmp_path / "params.txt").read_text().startswith("network")
    assert "3,026,306" in capsys.readouterr().out

  def test_encode_then_train(self, config_file, tmp_path):
    (tmp_path / "game.sgf").write_bytes(FIVE_MOVES)
    data = tmp_path / "game.gotr"
    main(["--config", config_file, "encode", "--sgf", str(tmp_path), "--out", str(data)])
    records = read_records(data)
    assert len(records) == 5 and (records.value == 0.0).all()

    out = tmp_path / "run"
    main(["--config", config_file, "train", "--arch", "res:1x8", "--data", str(data),
          "--epochs", "1", "--states-per-epoch", "4", "--batch", "4", "--out", str(out)])
    assert (out / "epoch_001.gowt").exists()
    assert load_checkpoint(out / "final.gowt").descriptor == "res:1x8"
    with open(out / "training.csv", newline="") as fp:
      assert next(csv.DictReader(fp))["network"] == "res:1x8"

  def test_unknown_command(self, config_file):
    with pytest.raises(SystemExit):
      main(["--config", config_file, "fly"])
