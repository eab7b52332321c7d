"""Scenario files, CSV time series and run metadata."""
import csv
import json

import numpy as np
import yaml

from .errors import ConfigError
from .model import ScenarioConfig
from .states import TimeSeries

SIG_DIGITS = 12


def read_config(path):
    """Load a flat ``key: value`` scenario file; unknown keys are rejected."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: not a valid key-value file ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a flat mapping of keys to values")
    nested = [k for k, v in data.items() if isinstance(v, dict)]
    if nested:
        raise ConfigError(f"{path}: nested keys are not allowed ({', '.join(map(str, nested))})")
    return ScenarioConfig.from_dict(data)


def dump_config(cfg):
    lines = []
    for key, value in cfg.to_dict().items():
        if isinstance(value, list):
            value = "[" + ", ".join(repr(float(v)) for v in value) + "]"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def write_config(cfg, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_config(cfg))


def header(n_modes):
    return ["t", *[f"mean_yes_{j}" for j in range(1, n_modes + 1)], "entropy", "purity"]


def _fmt(x):
    return f"{x:.{SIG_DIGITS}g}"


def write_csv(series, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header(series.n_modes))
        for row in series.table():
            writer.writerow([_fmt(float(x)) for x in row])


def read_csv(path):
    """Read a CSV written by ``write_csv`` back into a TimeSeries (observables only)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    head, body = rows[0], np.array([[float(x) for x in r] for r in rows[1:]])
    n_modes = len(head) - 3
    if head != header(n_modes):
        raise ValueError(f"{path}: unexpected header {head}")
    body = body.reshape(-1, len(head))
    return TimeSeries(
        times=body[:, 0], mean_yes=body[:, 1:1 + n_modes].T,
        entropy=body[:, -2], purity=body[:, -1],
    )


def write_metadata(meta, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_metadata(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
