"""Run orchestration shared by the CLI and the experiment scripts."""
import os
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError
from .integrator import evolve, evolve_exact
from .io import write_csv, write_metadata
from .model import ScenarioConfig
from .trajectories import ensemble_average

ENGINES = ("rk4", "exact", "trajectories")
OUT_ENV = "QPARLIAMENT_OUT"
ORACLE_TOL = 1e-5
TRAJECTORY_DT = 0.005
ORDER_CHECK_T = 2.0


def default_out_dir():
    return os.environ.get(OUT_ENV, "runs")


@dataclass(frozen=True)
class RunManifest:
    scenario: str
    engine: str
    config: ScenarioConfig
    out_dir: str
    seed: int = None
    n_traj: int = None

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ConfigError(f"unknown engine {self.engine!r}; choose from {', '.join(ENGINES)}")
        if self.engine == "trajectories":
            if self.n_traj is None or self.seed is None:
                raise ConfigError("engine 'trajectories' needs both --n-traj and --seed")
            if self.n_traj < 1:
                raise ConfigError("--n-traj must be positive")

    @property
    def stem(self):
        return f"{self.scenario}-{self.engine}"

    def to_dict(self):
        return {
            "scenario": self.scenario, "engine": self.engine, "config": self.config.to_dict(),
            "seed": self.seed, "n_traj": self.n_traj,
        }

    @classmethod
    def from_metadata(cls, meta, out_dir=None):
        return cls(
            scenario=meta["scenario"], engine=meta["engine"],
            config=ScenarioConfig.from_dict(meta["config"]),
            out_dir=out_dir or meta.get("out_dir") or default_out_dir(),
            seed=meta.get("seed"), n_traj=meta.get("n_traj"),
        )


def simulate(manifest):
    cfg = manifest.config
    if manifest.engine == "rk4":
        return evolve(cfg)
    if manifest.engine == "exact":
        return evolve_exact(cfg)
    return ensemble_average(cfg, manifest.n_traj, manifest.seed)


def run(manifest):
    """Simulate, then write ``<stem>.csv`` and ``<stem>.json`` into the output directory.

    Returns (series, csv path, metadata path).
    """
    start = time.perf_counter()
    series = simulate(manifest)
    elapsed = time.perf_counter() - start
    out = Path(manifest.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{manifest.stem}.csv"
    meta_path = out / f"{manifest.stem}.json"
    write_csv(series, csv_path)
    meta = manifest.to_dict()
    meta.update(tool_version=__version__, wall_clock_seconds=elapsed, csv=csv_path.name)
    write_metadata(meta, meta_path)
    return series, csv_path, meta_path


def max_deviation(a, b):
    return float(np.abs(a.table() - b.table()).max())


def oracle_check(cfg, tol=ORACLE_TOL):
    """RK4 against the exact propagator on the same grid."""
    start = time.perf_counter()
    rk4 = evolve(cfg)
    exact = evolve_exact(cfg)
    dev = max_deviation(rk4, exact)
    return {
        "max_deviation": dev,
        "tolerance": tol,
        "passed": dev < tol,
        "seconds": time.perf_counter() - start,
        "n_samples": len(rk4),
    }


def order_ratio(cfg, dt=0.01, t_end=ORDER_CHECK_T):
    """Endpoint density-matrix error of RK4 at dt and dt/2; returns (err, err_half, ratio)."""
    errs = []
    for h in (dt, dt / 2):
        c = replace(cfg, t_end=t_end, dt=h, sample_stride=int(round(t_end / h)))
        errs.append(float(np.abs(evolve(c).final_rho - evolve_exact(c).final_rho).max()))
    ratio = errs[0] / errs[1] if errs[1] > 0 else float("inf")
    return errs[0], errs[1], ratio


def with_overrides(cfg, dt=None, t_end=None):
    changes = {}
    if dt is not None:
        changes["dt"] = dt
    if t_end is not None:
        changes["t_end"] = t_end
    return replace(cfg, **changes) if changes else cfg


def trajectory_config(cfg, dt=None):
    """Config used by the jump engine: default dt halved, stride doubled to keep the sample spacing."""
    if dt is not None:
        return replace(cfg, dt=dt)
    stride = max(1, int(round(cfg.sample_stride * cfg.dt / TRAJECTORY_DT)))
    return replace(cfg, dt=TRAJECTORY_DT, sample_stride=stride)


def set_parameter(cfg, name, value):
    """Return cfg with one parameter replaced; list entries use ``name[i]`` (1-based)."""
    data = cfg.to_dict()
    if "[" in name and name.endswith("]"):
        key, idx = name[:-1].split("[", 1)
        if key not in data or not isinstance(data[key], list):
            raise ConfigError(f"{key!r} is not a list parameter")
        i = int(idx) - 1
        if not 0 <= i < len(data[key]):
            raise ConfigError(f"index {idx} out of range for {key}")
        data[key][i] = value
    elif name in data and not isinstance(data[name], list):
        data[name] = value
    else:
        raise ConfigError(f"cannot sweep {name!r}; use a scalar key or list[index]")
    return ScenarioConfig.from_dict(data)
