"""Containers for density matrices and sampled observable series."""
from dataclasses import dataclass, field

import numpy as np

from .errors import UnphysicalStateError

TRACE_TOL = 1e-8
HERMITIAN_TOL = 1e-10
POSITIVITY_TOL = 1e-8


def diagnostics(rho):
    """Return (trace error, hermiticity residual, smallest eigenvalue)."""
    trace_err = abs(np.trace(rho) - 1.0)
    herm = np.abs(rho - rho.conj().T).max()
    min_eig = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
    return float(trace_err), float(herm), float(min_eig)


@dataclass(frozen=True)
class DensityState:
    time: float
    rho: np.ndarray

    @property
    def dim(self):
        return self.rho.shape[0]

    def check(self):
        """Raise UnphysicalStateError if any invariant fails; return the diagnostics."""
        trace_err, herm, min_eig = diagnostics(self.rho)
        if not np.all(np.isfinite(self.rho)):
            raise UnphysicalStateError(
                f"unphysical state: reduce dt (non-finite entries at t={self.time:g})",
                self.time, {"finite": False},
            )
        diag = {"trace_error": trace_err, "hermiticity": herm, "min_eigenvalue": min_eig}
        if trace_err >= TRACE_TOL or herm >= HERMITIAN_TOL or min_eig <= -POSITIVITY_TOL:
            raise UnphysicalStateError(
                f"unphysical state: reduce dt (t={self.time:g}, {diag})", self.time, diag
            )
        return diag


@dataclass
class TimeSeries:
    """Observables sampled on a common time grid.

    ``mean_yes`` and ``mean_no`` have shape (n_modes, n_samples). The
    ``trace_error``/``hermiticity``/``min_eigenvalue`` arrays hold the
    per-sample physicality diagnostics; ``final_rho`` is the last sampled
    density matrix.
    """

    times: np.ndarray
    mean_yes: np.ndarray
    entropy: np.ndarray
    purity: np.ndarray
    mean_no: np.ndarray = None
    trace_error: np.ndarray = None
    hermiticity: np.ndarray = None
    min_eigenvalue: np.ndarray = None
    final_rho: np.ndarray = None
    extra: dict = field(default_factory=dict)

    @property
    def n_modes(self):
        return self.mean_yes.shape[0]

    def __len__(self):
        return len(self.times)

    def table(self):
        """Observables as a 2-D array with columns t, mean_yes_1..N, entropy, purity."""
        return np.column_stack([self.times, *self.mean_yes, self.entropy, self.purity])

    def asymptotic(self, fraction=0.1):
        """Mean over the final ``fraction`` of samples: (mean_yes per mode, entropy, purity)."""
        n = max(1, int(round(len(self.times) * fraction)))
        return (
            self.mean_yes[:, -n:].mean(axis=1),
            float(self.entropy[-n:].mean()),
            float(self.purity[-n:].mean()),
        )


def sample_grid(t_end, dt, stride):
    """Number of steps and the sampled step indices for a fixed-step run."""
    n_steps = int(round(t_end / dt))
    if n_steps < 1 or abs(n_steps * dt - t_end) > 1e-9 * max(1.0, t_end):
        raise ValueError(f"t_end={t_end} is not an integer multiple of dt={dt}")
    idx = list(range(0, n_steps + 1, stride))
    if idx[-1] != n_steps:
        idx.append(n_steps)
    return n_steps, idx
