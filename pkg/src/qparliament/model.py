"""Scenario parameters and the Hamiltonian / Lindblad / initial-state builders.

One schema covers the single-party, two-party and three-party models;
couplings that do not apply to a given mode count must be zero.
"""
from dataclasses import dataclass, field, fields

import numpy as np

from .errors import ConfigError
from .operators import build_ladder_set, kron
from .states import DensityState

# config-file key -> dataclass attribute
_KEY_TO_ATTR = {"lambda": "lam"}
_ATTR_TO_KEY = {v: k for k, v in _KEY_TO_ATTR.items()}
_TUPLE_FIELDS = ("omega", "lam", "gamma", "p_yes", "phase")


@dataclass(frozen=True)
class ScenarioConfig:
    n_modes: int = 1
    omega: tuple = (0.0,)
    lam: tuple = (0.0,)
    gamma_c: float = 0.0
    gamma_nc: float = 0.0
    gamma: tuple = (0.0, 0.0, 0.0, 0.0)
    tau1: float = 0.0
    tau2: float = 0.0
    kappa: float = 0.0
    p_yes: tuple = (1.0,)
    phase: tuple = None
    t_end: float = 100.0
    dt: float = 0.01
    sample_stride: int = 10

    def __post_init__(self):
        for name in _TUPLE_FIELDS:
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, tuple(float(v) for v in np.atleast_1d(value)))
        if self.phase is None:
            object.__setattr__(self, "phase", (0.0,) * len(self.p_yes))
        self.validate()

    def validate(self):
        n = self.n_modes
        if not isinstance(n, (int, np.integer)) or n not in (1, 2, 3):
            raise ConfigError(f"n_modes must be 1, 2 or 3, got {n!r}")
        for name in ("omega", "lam", "p_yes", "phase"):
            if len(getattr(self, name)) != n:
                key = _ATTR_TO_KEY.get(name, name)
                raise ConfigError(f"{key} needs {n} values, got {len(getattr(self, name))}")
        if len(self.gamma) != 4:
            raise ConfigError(f"gamma needs 4 values, got {len(self.gamma)}")
        scalars = {k: getattr(self, k) for k in ("gamma_c", "gamma_nc", "tau1", "tau2", "kappa")}
        values = list(self.omega) + list(self.lam) + list(self.gamma) + list(scalars.values())
        if not all(np.isfinite(v) and v >= 0 for v in values):
            raise ConfigError("couplings and strengths must be finite and non-negative")
        if not all(0.0 <= p <= 1.0 for p in self.p_yes):
            raise ConfigError(f"p_yes values must lie in [0, 1], got {self.p_yes}")
        if not all(np.isfinite(f) for f in self.phase):
            raise ConfigError("phases must be finite")
        if n != 2 and (self.gamma_c or self.gamma_nc):
            raise ConfigError("gamma_c / gamma_nc apply only to n_modes = 2")
        if n != 3 and any(self.gamma):
            raise ConfigError("gamma (cubic couplings) apply only to n_modes = 3")
        if n < 2 and self.kappa:
            raise ConfigError("kappa acts on mode 2 and needs n_modes >= 2")
        if not (np.isfinite(self.t_end) and self.t_end > 0 and np.isfinite(self.dt) and self.dt > 0):
            raise ConfigError("t_end and dt must be positive")
        if not isinstance(self.sample_stride, (int, np.integer)) or self.sample_stride < 1:
            raise ConfigError("sample_stride must be a positive integer")

    @property
    def dim(self):
        return 2**self.n_modes

    def to_dict(self):
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[_ATTR_TO_KEY.get(f.name, f.name)] = list(value) if isinstance(value, tuple) else value
        return out

    @classmethod
    def from_dict(cls, data):
        known = {_ATTR_TO_KEY.get(f.name, f.name) for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        kwargs = {_KEY_TO_ATTR.get(k, k): v for k, v in data.items()}
        try:
            for k in ("n_modes", "sample_stride"):
                if k in kwargs:
                    v = kwargs[k]
                    if isinstance(v, bool) or float(v) != int(v):
                        raise ConfigError(f"{k} must be an integer, got {v!r}")
                    kwargs[k] = int(v)
            for k in ("gamma_c", "gamma_nc", "tau1", "tau2", "kappa", "t_end", "dt"):
                if k in kwargs:
                    kwargs[k] = float(kwargs[k])
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class LindbladTerm:
    label: str
    operator: np.ndarray = field(repr=False)


def _check_ops(cfg, ops):
    if ops.n_modes != cfg.n_modes:
        raise ConfigError(f"ladder set has {ops.n_modes} modes, config has {cfg.n_modes}")


def build_hamiltonian(cfg, ops=None):
    ops = ops or build_ladder_set(cfg.n_modes)
    _check_ops(cfg, ops)
    a, ad = ops.a, ops.ad
    h = np.zeros((ops.dim, ops.dim), dtype=complex)
    for k in range(1, cfg.n_modes + 1):
        h += cfg.omega[k - 1] * ad(k) @ a(k)
        h += cfg.lam[k - 1] * (ad(k) + a(k))
    if cfg.n_modes == 2:
        h += cfg.gamma_c * (ad(1) @ a(2) + ad(2) @ a(1))
        h += cfg.gamma_nc * (ad(1) @ ad(2) + a(2) @ a(1))
    if cfg.n_modes == 3:
        g1, g2, g3, g4 = cfg.gamma
        cubic = (
            g1 * ad(1) @ a(2) @ a(3)
            + g2 * ad(1) @ ad(2) @ a(3)
            + g3 * ad(1) @ a(2) @ ad(3)
            + g4 * ad(1) @ ad(2) @ ad(3)
        )
        h += cubic + cubic.conj().T
    # bitwise hermitian regardless of summation order
    return 0.5 * (h + h.conj().T)


def build_lindblads(cfg, ops=None):
    ops = ops or build_ladder_set(cfg.n_modes)
    _check_ops(cfg, ops)
    if cfg.kappa and cfg.n_modes < 2:
        raise ConfigError("kappa acts on mode 2 and needs n_modes >= 2")
    terms = []
    if cfg.tau1:
        terms.append(LindbladTerm("tau1*a_1", cfg.tau1 * ops.a(1)))
    if cfg.tau2:
        terms.append(LindbladTerm("tau2*a_1^+", cfg.tau2 * ops.ad(1)))
    if cfg.kappa:
        terms.append(LindbladTerm("kappa*a_2^+", cfg.kappa * ops.ad(2)))
    return terms


def initial_vector(cfg):
    """Product state (x)_j (sqrt(p_j) e_0 + exp(i phi_j) sqrt(1 - p_j) e_1)."""
    factors = [
        np.array([np.sqrt(p), np.exp(1j * phi) * np.sqrt(1.0 - p)], dtype=complex)
        for p, phi in zip(cfg.p_yes, cfg.phase)
    ]
    psi = kron(*[f[:, None] for f in factors])[:, 0]
    return psi / np.linalg.norm(psi)


def build_initial_state(cfg):
    psi = initial_vector(cfg)
    return DensityState(0.0, np.outer(psi, psi.conj()))


def build_model(cfg):
    """Convenience: (ladder set, H, Lindblad terms, initial state) for one config."""
    ops = build_ladder_set(cfg.n_modes)
    return ops, build_hamiltonian(cfg, ops), build_lindblads(cfg, ops), build_initial_state(cfg)
