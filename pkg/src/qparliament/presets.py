"""Named scenarios reproducing the parameter sets of the published figures.

Where a figure shows "different values" of a parameter without listing
them, the sweep values are a fixed choice: tau_1 in {0.1, 0.5, 1, 2} for the
single-leader runs and {0, 0.1, 0.25, 0.5, 1} for the tau_2 / gamma_c /
gamma_nc sweeps.
"""
from dataclasses import dataclass

from .model import ScenarioConfig

TAU1_SWEEP = (0.1, 0.5, 1.0, 2.0)
COUPLING_SWEEP = (0.0, 0.1, 0.25, 0.5, 1.0)


@dataclass(frozen=True)
class Preset:
    name: str
    figure: str
    caption: str
    config: ScenarioConfig


def _tag(x):
    """0.25 -> '025', 1.0 -> '10', 0.1 -> '01', 2.0 -> '20'."""
    if x == 0:
        return "00"
    return f"{x:.2f}".rstrip("0").replace(".", "") if x < 1 else f"{x:.1f}".replace(".", "")


def _single(tau1, tau2=0.0):
    return ScenarioConfig(n_modes=1, omega=(1.0,), lam=(0.25,), tau1=tau1, tau2=tau2, p_yes=(0.7,))


def _pair(gamma_c=0.0, gamma_nc=0.0):
    return ScenarioConfig(
        n_modes=2, omega=(1.0, 1.0), lam=(0.25, 0.25), gamma_c=gamma_c, gamma_nc=gamma_nc,
        tau1=0.5, p_yes=(0.6, 0.4),
    )


def _triple(which, kappa=0.0):
    gamma = [0.0] * 4
    gamma[which - 1] = 1.0
    return ScenarioConfig(
        n_modes=3, omega=(0.1,) * 3, lam=(0.025,) * 3, gamma=tuple(gamma), tau1=0.5,
        kappa=kappa, p_yes=(0.7, 0.6, 0.5),
    )


def _catalog():
    out = []
    for tau in TAU1_SWEEP:
        out.append(Preset(
            f"fig1-tau{_tag(tau)}", "Fig. 1",
            f"single party, tau_1={tau:g}, tau_2=0, omega=1, lambda=0.25, "
            "psi(0)=sqrt(0.7)|e_0>+sqrt(0.3)|e_1>",
            _single(tau),
        ))
    for tau2 in COUPLING_SWEEP:
        name = "fig2-balanced" if tau2 == 0.5 else f"fig2-tau2-{_tag(tau2)}"
        out.append(Preset(
            name, "Fig. 2",
            f"single party, tau_1=0.5, tau_2={tau2:g}, omega=1, lambda=0.25, "
            "psi(0)=sqrt(0.7)|e_0>+sqrt(0.3)|e_1>",
            _single(0.5, tau2),
        ))
    for g in COUPLING_SWEEP:
        out.append(Preset(
            f"fig3-gammac-{_tag(g)}", "Fig. 3",
            f"two parties, gamma_c={g:g}, gamma_nc=0, omega_1=omega_2=1, "
            "lambda_1=lambda_2=0.25, tau_1=0.5, initial means 0.6/0.4",
            _pair(gamma_c=g),
        ))
    for g in COUPLING_SWEEP:
        out.append(Preset(
            f"fig4-gammanc-{_tag(g)}", "Fig. 4",
            f"two parties, gamma_nc={g:g}, gamma_c=0, omega_1=omega_2=1, "
            "lambda_1=lambda_2=0.25, tau_1=0.5, initial means 0.6/0.4",
            _pair(gamma_nc=g),
        ))
    for fig, kappa in (("5", 0.0), ("6", 0.1)):
        for k in range(1, 5):
            extra = f", kappa={kappa:g}" if kappa else ""
            out.append(Preset(
                f"fig{fig}-gamma{k}", f"Fig. {fig}",
                f"three parties, gamma_{k}=1 (others 0), omega_1=omega_2=omega_3=0.1, "
                f"lambda_1=lambda_2=lambda_3=0.025, tau_1=0.5{extra}, initial means 0.7/0.6/0.5",
                _triple(k, kappa),
            ))
    out.append(Preset(
        "null", "-", "single party, every coupling and strength zero (constant observables)",
        ScenarioConfig(n_modes=1, omega=(0.0,), lam=(0.0,), p_yes=(0.7,)),
    ))
    return {p.name: p for p in out}


PRESETS = _catalog()


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; see list-presets") from None


def list_presets():
    return list(PRESETS.values())
