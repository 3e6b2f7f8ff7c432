import dataclasses
import json
import os
import re
import uuid

from goformer.logger import info, warn

RUN_FILE = "run.json"

_UNSAFE = re.compile(r"[^A-Za-z0-9._-]+")


def run_name(kind, descriptor):
    """`train` + `eff:[8,16]x[1,1]:mb3d=1:heads=2` -> `train_eff_8_16_x_1_1_mb3d_1_heads_2`"""
    return _UNSAFE.sub("_", f"{kind}_{descriptor}").strip("_")


def make_run_dir(root, kind, descriptor, settings=None):
    """
    Creates the output directory of one experiment run, named after the kind
    of run and the architecture. An existing name gets a UID suffix so that
    earlier runs are never overwritten. The settings of the run are written
    to `run.json` inside it.

    Args:
        root: directory holding all runs

        kind: run kind (`train`, `selfplay`, ...)

        descriptor: architecture descriptor of the network being run

        settings: optional dataclass or dict recorded in `run.json`

    Returns:
        path to the created directory
    """
    name = run_name(kind, descriptor)
    if os.path.isdir(os.path.join(root, name)):
        name += "_" + uuid.uuid4().hex[:8]
        info(f"run directory exists, this run goes to \"{name}\"")
    path = os.path.join(root, name)
    os.makedirs(path)
    record = {"kind": kind, "network": descriptor}
    if settings is not None:
        record["settings"] = serializable_settings(settings)
    with open(os.path.join(path, RUN_FILE), "w") as fp:
        json.dump(record, fp, indent=2)
    return path


def serializable_settings(settings):
    """
    The JSON-compatible part of a settings dataclass or dict; values that
    cannot be serialised are dropped with a warning.
    """
    if dataclasses.is_dataclass(settings):
        settings = dataclasses.asdict(settings)
    kept = {}
    for key, value in settings.items():
        try:
            json.dumps(value)
        except (TypeError, ValueError):
            warn(f"setting {key} is not JSON serialisable and is left out of {RUN_FILE}")
            continue
        kept[key] = value
    return kept
