"""GKSL dynamics: fixed-step RK4 integration and an exact propagator.

``evolve`` integrates the master equation directly on density matrices.
``evolve_exact`` builds the Liouvillian on column-stacked vectors and
exponentiates it; the two share nothing but the model builders, so they
can check each other.
"""
import numpy as np
from scipy.linalg import expm

from .errors import DimensionError
from .model import build_model
from .observables import observe
from .states import DensityState, TimeSeries, diagnostics, sample_grid

MAX_SUPEROP_MODES = 6


def _operators(terms):
    return [t.operator if hasattr(t, "operator") else np.asarray(t) for t in terms]


def lindblad_rhs(rho, H, terms):
    """-i[H, rho] + sum_j (L rho L^+ - 1/2 {L^+ L, rho})."""
    if rho.shape != H.shape:
        raise DimensionError(f"rho {rho.shape} and H {H.shape} differ")
    out = -1j * (H @ rho - rho @ H)
    for L in _operators(terms):
        if L.shape != rho.shape:
            raise DimensionError(f"Lindblad operator {L.shape} vs rho {rho.shape}")
        Ld = L.conj().T
        LdL = Ld @ L
        out += L @ rho @ Ld - 0.5 * (LdL @ rho + rho @ LdL)
    return out


class _Generator:
    """Pre-factored right-hand side: -i(K rho - rho K^+) + sum L rho L^+, K = H - i/2 sum L^+L."""

    def __init__(self, H, terms):
        ops = _operators(terms)
        for L in ops:
            if L.shape != H.shape:
                raise DimensionError(f"Lindblad operator {L.shape} vs H {H.shape}")
        damping = sum((L.conj().T @ L for L in ops), np.zeros_like(H))
        self.K = -1j * (H - 0.5j * damping)
        self.Kd = self.K.conj().T
        self.jumps = [(L, L.conj().T) for L in ops]

    def __call__(self, rho):
        out = self.K @ rho + rho @ self.Kd
        for L, Ld in self.jumps:
            out += L @ rho @ Ld
        return out


def _rk4(f, rho, dt):
    k1 = f(rho)
    k2 = f(rho + 0.5 * dt * k1)
    k3 = f(rho + 0.5 * dt * k2)
    k4 = f(rho + dt * k3)
    new = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return 0.5 * (new + new.conj().T)


def step_rk4(state, dt, H, terms, check=True):
    if not dt > 0:
        raise ValueError("dt must be positive")
    f = terms if isinstance(terms, _Generator) else _Generator(H, terms)
    new = DensityState(state.time + dt, _rk4(f, state.rho, dt))
    if check:
        new.check()
    return new


def _series(times, rhos, n_modes):
    obs = [observe(r, n_modes) for r in rhos]
    diag = np.array([diagnostics(r) for r in rhos])
    return TimeSeries(
        times=np.asarray(times, dtype=float),
        mean_yes=np.array([o["mean_yes"] for o in obs]).T,
        entropy=np.array([o["entropy"] for o in obs]),
        purity=np.array([o["purity"] for o in obs]),
        mean_no=np.array([o["mean_no"] for o in obs]).T,
        trace_error=diag[:, 0],
        hermiticity=diag[:, 1],
        min_eigenvalue=diag[:, 2],
        final_rho=rhos[-1],
    )


def evolve(cfg, model=None):
    """Integrate from 0 to cfg.t_end with RK4, sampling every cfg.sample_stride steps."""
    _, H, terms, state = model or build_model(cfg)
    n_steps, sampled = sample_grid(cfg.t_end, cfg.dt, cfg.sample_stride)
    f = _Generator(H, terms)
    state.check()
    wanted = set(sampled)
    times, rhos = [0.0], [state.rho]
    rho = state.rho
    for k in range(1, n_steps + 1):
        rho = _rk4(f, rho, cfg.dt)
        # every step is validated, not just the sampled ones
        DensityState(k * cfg.dt, rho).check()
        if k in wanted:
            times.append(k * cfg.dt)
            rhos.append(rho)
    return _series(times, rhos, cfg.n_modes)


def vec(rho):
    """Column-stacking vectorization."""
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v, dim=None):
    dim = dim or int(round(np.sqrt(v.size)))
    return np.asarray(v).reshape(dim, dim, order="F")


def build_superoperator(H, terms):
    """Liouvillian M with vec(drho/dt) = M vec(rho), using vec(A X B) = (B^T (x) A) vec(X)."""
    dim = H.shape[0]
    if dim > 2**MAX_SUPEROP_MODES:
        raise DimensionError(f"superoperator guard: dim {dim} exceeds 2^{MAX_SUPEROP_MODES}")
    eye = np.eye(dim, dtype=complex)
    M = -1j * (np.kron(eye, H) - np.kron(H.T, eye))
    for L in _operators(terms):
        if L.shape != H.shape:
            raise DimensionError(f"Lindblad operator {L.shape} vs H {H.shape}")
        LdL = L.conj().T @ L
        M += np.kron(L.conj(), L) - 0.5 * (np.kron(eye, LdL) + np.kron(LdL.T, eye))
    return M


def evolve_exact(cfg, model=None):
    """rho(t) = unvec(exp(M t) vec(rho(0))) on the same sample grid as ``evolve``."""
    _, H, terms, state = model or build_model(cfg)
    n_steps, sampled = sample_grid(cfg.t_end, cfg.dt, cfg.sample_stride)
    M = build_superoperator(H, terms)
    dim = H.shape[0]
    v0 = vec(state.rho)
    rhos, times = [], []
    # one propagator per distinct gap; the grid is uniform except possibly the last gap
    cache = {}
    v, prev = v0, 0
    for k in sampled:
        gap = k - prev
        if gap:
            if gap not in cache:
                cache[gap] = expm(M * (gap * cfg.dt))
            v = cache[gap] @ v
        prev = k
        rho = unvec(v, dim)
        rhos.append(0.5 * (rho + rho.conj().T))
        times.append(k * cfg.dt)
    return _series(times, rhos, cfg.n_modes)
