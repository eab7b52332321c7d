"""First-order quantum-jump unraveling of the GKSL equation.

Each step either jumps, ``psi -> L_j psi / |L_j psi|`` with probability
``dt |L_j psi|^2``, or follows the normalized no-jump drift
``(1 - i dt H - dt/2 sum_j L_j^+ L_j) psi``. Averaging ``|psi><psi|`` over
trajectories recovers the master-equation solution up to O(dt).

Trajectory ``i`` of an ensemble draws its uniforms from its own generator
seeded with ``base_seed + i``, one draw per step, so results do not depend
on how trajectories are batched.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, JumpSchemeError
from .model import build_hamiltonian, build_lindblads, initial_vector
from .observables import observe
from .operators import build_ladder_set
from .states import TimeSeries, diagnostics, sample_grid

NORM_TOL = 1e-10
BATCH_SIZE = 500
DRAW_CHUNK = 1000
N_BLOCKS = 20


@dataclass(frozen=True)
class Trajectory:
    psi: np.ndarray
    time: float = 0.0
    seed: int = 0
    jump_log: tuple = field(default=())


def _ops(terms):
    return [t.operator if hasattr(t, "operator") else np.asarray(t) for t in terms]


def _labels(terms):
    return [getattr(t, "label", f"L{j + 1}") for j, t in enumerate(terms)]


def jump_probabilities(psi, dt, terms):
    p_jump = [float(dt * np.vdot(L @ psi, L @ psi).real) for L in _ops(terms)]
    total = sum(p_jump)
    if total > 1.0:
        raise JumpSchemeError(f"dt too large for jump scheme: total jump probability {total:.3g} > 1")
    return 1.0 - total, p_jump


def drift_operator(H, terms, dt):
    damping = sum((L.conj().T @ L for L in _ops(terms)), np.zeros_like(H))
    return np.eye(H.shape[0]) - 1j * dt * H - 0.5 * dt * damping


def trajectory_step(traj, dt, H, terms, u):
    """Advance one step using the uniform draw ``u`` in [0, 1)."""
    psi = traj.psi
    _, p_jump = jump_probabilities(psi, dt, terms)
    edge = 0.0
    for L, label, p in zip(_ops(terms), _labels(terms), p_jump):
        edge += p
        if p > 0 and u < edge:
            target = L @ psi
            norm = np.linalg.norm(target)
            if norm == 0:
                raise JumpSchemeError(f"jump on {label} has zero norm")
            return replace(
                traj, psi=target / norm, time=traj.time + dt,
                jump_log=traj.jump_log + ((traj.time + dt, label),),
            )
    target = drift_operator(H, terms, dt) @ psi
    return replace(traj, psi=target / np.linalg.norm(target), time=traj.time + dt)


def _uniform_streams(seeds, n_steps):
    """Yield (start, block) with block[b, k] the k-th uniform of trajectory b."""
    gens = [np.random.default_rng(int(s)) for s in seeds]
    for start in range(0, n_steps, DRAW_CHUNK):
        size = min(DRAW_CHUNK, n_steps - start)
        yield start, np.stack([g.random(size) for g in gens])


def _run_batch(psi0, H, ops, dt, n_steps, sampled, seeds, n_modes):
    """Evolve a batch of trajectories; return per-sample sums needed for averaging."""
    n = len(seeds)
    dim = psi0.size
    drift = drift_operator(H, ops, dt)
    psi = np.tile(psi0, (n, 1))
    sample_at = {k: s for s, k in enumerate(sampled)}
    n_samples = len(sampled)
    rho_sum = np.zeros((n_samples, dim, dim), dtype=complex)
    yes_sum = np.zeros((n_samples, n_modes))
    yes_sq = np.zeros((n_samples, n_modes))
    jumps = np.zeros(len(ops), dtype=np.int64)
    expected = np.zeros(len(ops))
    # diagonal of the yes-projector for each mode, in the product basis
    bits = (np.arange(dim)[:, None] >> (n_modes - 1 - np.arange(n_modes))[None, :]) & 1
    yes_weights = (bits == 0).astype(float)

    def record(s, states):
        rho_sum[s] += states.T @ states.conj()
        pops = np.abs(states) ** 2 @ yes_weights
        yes_sum[s] += pops.sum(axis=0)
        yes_sq[s] += (pops**2).sum(axis=0)

    record(0, psi)
    for start, draws in _uniform_streams(seeds, n_steps):
        for c in range(draws.shape[1]):
            k = start + c + 1
            targets = [psi @ L.T for L in ops]
            probs = np.stack([dt * np.sum(np.abs(t) ** 2, axis=1) for t in targets], axis=1) \
                if ops else np.zeros((n, 0))
            if ops and probs.sum(axis=1).max() > 1.0:
                raise JumpSchemeError(
                    f"dt too large for jump scheme: total jump probability "
                    f"{probs.sum(axis=1).max():.3g} > 1"
                )
            expected += probs.sum(axis=0)
            u = draws[:, c]
            new = psi @ drift.T
            choice = np.full(n, -1)
            if ops:
                edges = np.cumsum(probs, axis=1)
                hit = (u[:, None] < edges) & (probs > 0)
                any_hit = hit.any(axis=1)
                choice[any_hit] = np.argmax(hit[any_hit], axis=1)
                for j, t in enumerate(targets):
                    mask = choice == j
                    if mask.any():
                        new[mask] = t[mask]
                        jumps[j] += mask.sum()
            norms = np.linalg.norm(new, axis=1)
            if np.any(norms == 0):
                raise JumpSchemeError("jump with zero norm")
            psi = new / norms[:, None]
            if k in sample_at:
                record(sample_at[k], psi)
    return rho_sum, yes_sum, yes_sq, jumps, expected, psi


def ensemble_average(cfg, n_traj, base_seed=0, dt=None):
    """Average |psi><psi| over ``n_traj`` trajectories on the sample grid of ``cfg``.

    ``extra`` holds ``mean_yes_se`` (per mode, per sample), ``entropy_se``
    (jackknife over ``N_BLOCKS`` blocks, final sample only), ``jump_counts``
    and ``expected_jumps`` per Lindblad term, and ``labels``.
    """
    if n_traj < 1:
        raise ConfigError("n_traj must be positive")
    if dt is not None:
        cfg = replace(cfg, dt=dt)
    ops_set = build_ladder_set(cfg.n_modes)
    H = build_hamiltonian(cfg, ops_set)
    terms = build_lindblads(cfg, ops_set)
    ops = _ops(terms)
    psi0 = initial_vector(cfg)
    n_steps, sampled = sample_grid(cfg.t_end, cfg.dt, cfg.sample_stride)
    dim = psi0.size

    rho_total = np.zeros((len(sampled), dim, dim), dtype=complex)
    yes_total = np.zeros((len(sampled), cfg.n_modes))
    yes_sq_total = np.zeros_like(yes_total)
    jumps_total = np.zeros(len(ops), dtype=np.int64)
    expected_total = np.zeros(len(ops))
    n_blocks = min(N_BLOCKS, n_traj)
    block_final = np.zeros((n_blocks, dim, dim), dtype=complex)
    block_count = np.zeros(n_blocks)

    # fixed batch boundaries and a fixed summation order make the reduction reproducible
    for lo in range(0, n_traj, BATCH_SIZE):
        idx = np.arange(lo, min(n_traj, lo + BATCH_SIZE))
        rho_sum, yes_sum, yes_sq, jumps, expected, final_psi = _run_batch(
            psi0, H, ops, cfg.dt, n_steps, sampled, base_seed + idx, cfg.n_modes
        )
        rho_total += rho_sum
        yes_total += yes_sum
        yes_sq_total += yes_sq
        jumps_total += jumps
        expected_total += expected
        for b in range(n_blocks):
            sel = final_psi[idx % n_blocks == b]
            block_final[b] += sel.T @ sel.conj()
            block_count[b] += len(sel)

    rhos = rho_total / n_traj
    rhos = 0.5 * (rhos + np.conj(np.transpose(rhos, (0, 2, 1))))
    obs = [observe(r, cfg.n_modes) for r in rhos]
    mean = yes_total / n_traj
    var = np.maximum(yes_sq_total / n_traj - mean**2, 0.0)
    se = np.sqrt(var / max(n_traj - 1, 1))
    diag = np.array([diagnostics(r) for r in rhos])

    entropy_se = float("nan")
    if n_blocks > 1:
        loo = [
            observe((block_final.sum(axis=0) - block_final[b]) / (n_traj - block_count[b]), cfg.n_modes)["entropy"]
            for b in range(n_blocks)
        ]
        loo = np.array(loo)
        entropy_se = float(np.sqrt((n_blocks - 1) / n_blocks * np.sum((loo - loo.mean()) ** 2)))

    return TimeSeries(
        times=np.array([k * cfg.dt for k in sampled]),
        mean_yes=np.array([o["mean_yes"] for o in obs]).T,
        entropy=np.array([o["entropy"] for o in obs]),
        purity=np.array([o["purity"] for o in obs]),
        mean_no=np.array([o["mean_no"] for o in obs]).T,
        trace_error=diag[:, 0],
        hermiticity=diag[:, 1],
        min_eigenvalue=diag[:, 2],
        final_rho=rhos[-1],
        extra={
            "mean_yes_se": se.T,
            "entropy_se": entropy_se,
            "jump_counts": jumps_total,
            "expected_jumps": expected_total,
            "labels": _labels(terms),
            "n_traj": n_traj,
            "base_seed": base_seed,
        },
    )


def perturbative_jump_state(psi0, dt, coupling, gamma=1.0):
    """Normalized a_1 (1 - i dt H_x) psi0 for a two-mode state, H_x the chosen coupling.

    ``coupling`` is ``"cooperative"`` (H_c = gamma (a_1^+ a_2 + a_2^+ a_1)) or
    ``"non-cooperative"`` (H_nc = gamma (a_1^+ a_2^+ + a_2 a_1)). Free terms of
    the Hamiltonian are left out on purpose: this is the small-dt branch in
    which only the interaction acts before the leader's jump.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (4,):
        raise ConfigError("perturbative jump state is defined for two modes (dim 4)")
    if abs(np.linalg.norm(psi0) - 1.0) > NORM_TOL:
        raise ValueError("psi0 must be normalized")
    ops = build_ladder_set(2)
    a, ad = ops.a, ops.ad
    if coupling in ("cooperative", "c"):
        hx = gamma * (ad(1) @ a(2) + ad(2) @ a(1))
    elif coupling in ("non-cooperative", "nc"):
        hx = gamma * (ad(1) @ ad(2) + a(2) @ a(1))
    else:
        raise ValueError(f"unknown coupling {coupling!r}")
    if np.linalg.norm(a(1) @ psi0) == 0:
        raise JumpSchemeError("no jump support: a_1 psi0 = 0")
    drifted = psi0 - 1j * dt * (hx @ psi0)
    jumped = a(1) @ drifted
    return jumped / np.linalg.norm(jumped)
