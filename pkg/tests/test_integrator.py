from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.linalg import expm

from qparliament.errors import DimensionError, UnphysicalStateError
from qparliament.integrator import (
    build_superoperator, evolve, evolve_exact, lindblad_rhs, step_rk4, unvec, vec,
)
from qparliament.model import ScenarioConfig, build_model
from qparliament.operators import NO, YES, build_ladder_set
from qparliament.presets import PRESETS
from qparliament.states import DensityState

from helpers import random_density, random_hermitian, seeds

A = build_ladder_set(1).a(1)
FIG1 = PRESETS["fig1-tau05"].config


def test_rhs_von_neumann_limit():
    rng = np.random.default_rng(1)
    rho, H = random_density(4, rng), random_hermitian(4, rng)
    np.testing.assert_array_equal(lindblad_rhs(rho, H, []), -1j * (H @ rho - rho @ H))


def test_rhs_eigenstate_is_stationary():
    H = 1.3 * A.conj().T @ A
    np.testing.assert_array_equal(lindblad_rhs(YES, H, []), np.zeros((2, 2)))


def test_rhs_decay_by_hand():
    # a rho_1 a^+ = rho_0 and a^+ a rho_1 = rho_1
    tau = 0.5
    out = lindblad_rhs(NO.copy(), np.zeros((2, 2)), [tau * A])
    np.testing.assert_allclose(out, tau**2 * (YES - NO), atol=1e-16)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_rhs_hermitian_traceless(seed):
    rng = np.random.default_rng(seed)
    rho, H = random_density(4, rng), random_hermitian(4, rng)
    terms = [rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(2)]
    out = lindblad_rhs(rho, H, terms)
    assert np.abs(out - out.conj().T).max() < 1e-12
    assert abs(np.trace(out)) < 1e-12


def test_rhs_dimension_mismatch():
    with pytest.raises(DimensionError):
        lindblad_rhs(np.eye(2) / 2, np.eye(4), [])


def test_step_trivial_dynamics_unchanged():
    state = DensityState(0.0, random_density(2, np.random.default_rng(5)))
    new = step_rk4(state, 0.1, np.zeros((2, 2)), [])
    np.testing.assert_array_equal(new.rho, state.rho)
    assert new.time == pytest.approx(0.1)


def _one_step_error(cfg, dt):
    _, H, terms, state = build_model(cfg)
    exact = unvec(expm(build_superoperator(H, terms) * dt) @ vec(state.rho))
    return np.abs(step_rk4(state, dt, H, terms).rho - exact).max()


def test_local_truncation_error_is_fifth_order():
    ratio = _one_step_error(FIG1, 0.1) / _one_step_error(FIG1, 0.05)
    assert 28 < ratio < 36  # 2^5 = 32


def test_trace_drift_per_step():
    _, H, terms, state = build_model(FIG1)
    for _ in range(200):
        new = step_rk4(state, 0.01, H, terms)
        assert abs(np.trace(new.rho) - np.trace(state.rho)) < 1e-12
        state = new


def test_step_rejects_unphysical_result():
    # a huge step through a strong decay overshoots the populations
    _, H, terms, state = build_model(replace(FIG1, tau1=2.0))
    with pytest.raises(UnphysicalStateError, match="reduce dt"):
        step_rk4(state, 3.0, H, terms)


def test_evolve_null_is_constant():
    ts = evolve(PRESETS["null"].config)
    assert np.all(ts.mean_yes == ts.mean_yes[:, :1])
    assert np.all(ts.entropy == ts.entropy[0]) and np.all(ts.purity == ts.purity[0])


def test_evolve_balanced_leaders_reach_maximal_mixing():
    my, s, _ = evolve(PRESETS["fig2-balanced"].config).asymptotic()
    assert abs(my[0] - 0.5) < 1e-6
    assert abs(s - np.log(2)) < 1e-6


def test_unitary_run_stays_pure_and_keeps_spectrum():
    cfg = ScenarioConfig(n_modes=2, omega=[1, 0.3], lam=[0.25, 0.4], gamma_c=0.5, gamma_nc=0.2,
                         p_yes=[0.6, 0.4], phase=[0.3, 1.0], t_end=20.0)
    ts = evolve(cfg)
    assert np.abs(ts.purity - 1).max() < 1e-8
    w0 = np.linalg.eigvalsh(build_model(cfg)[3].rho)
    np.testing.assert_allclose(np.linalg.eigvalsh(ts.final_rho), w0, atol=1e-8)


def test_superoperator_shape_and_guard():
    assert build_superoperator(np.zeros((2, 2)), []).shape == (4, 4)
    with pytest.raises(DimensionError):
        build_superoperator(np.zeros((128, 128)), [])


def test_superoperator_spectrum_without_dissipation():
    H = build_model(PRESETS["fig3-gammac-05"].config)[1]
    spec = np.linalg.eigvals(build_superoperator(H, []))
    assert np.abs(spec.real).max() < 1e-10
    e = np.linalg.eigvalsh(H)
    gaps = np.sort((e[:, None] - e[None, :]).ravel())
    np.testing.assert_allclose(np.sort(spec.imag), gaps, atol=1e-10)


@pytest.mark.parametrize("name", ["fig2-tau2-025", "fig4-gammanc-05", "fig6-gamma3"])
def test_superoperator_reproduces_rhs(name):
    _, H, terms, _ = build_model(PRESETS[name].config)
    M = build_superoperator(H, terms)
    rng = np.random.default_rng(7)
    for _ in range(100):
        rho = random_hermitian(H.shape[0], rng)
        assert np.abs(vec(lindblad_rhs(rho, H, terms)) - M @ vec(rho)).max() < 1e-12


def test_exact_starts_at_initial_observables():
    cfg = PRESETS["fig5-gamma2"].config
    ts = evolve_exact(cfg)
    np.testing.assert_allclose(ts.mean_yes[:, 0], cfg.p_yes, atol=1e-15)
    assert ts.times[0] == 0 and abs(ts.purity[0] - 1) < 1e-14


def test_exact_endpoint_is_stationary():
    cfg = replace(PRESETS["fig1-tau05"].config, t_end=400.0, sample_stride=4000)
    ts = evolve_exact(cfg)
    _, H, terms, _ = build_model(cfg)
    assert np.abs(lindblad_rhs(ts.final_rho, H, terms)).max() < 1e-6


def test_rk4_matches_exact_with_fourth_order_convergence():
    errs = []
    for dt in (0.02, 0.01):
        cfg = replace(FIG1, t_end=4.0, dt=dt, sample_stride=int(round(4.0 / dt)))
        errs.append(np.abs(evolve(cfg).final_rho - evolve_exact(cfg).final_rho).max())
    assert errs[1] < 1e-8
    assert 12 <= errs[0] / errs[1] <= 20


def test_grid_must_divide():
    with pytest.raises(ValueError):
        evolve(replace(FIG1, t_end=1.005, dt=0.01))
