"""Scalar diagnostics of density matrices and state vectors."""
import numpy as np

from .errors import DimensionError
from .operators import NO, YES, embed

EIGEN_CLAMP = 1e-12


def _n_modes_of(rho):
    n = int(round(np.log2(rho.shape[0])))
    if 2**n != rho.shape[0]:
        raise DimensionError(f"dimension {rho.shape[0]} is not a power of two")
    return n


def _projected(rho, projector, mode, n_modes):
    if n_modes is None:
        n_modes = _n_modes_of(rho)
    if not 1 <= mode <= n_modes:
        raise DimensionError(f"mode {mode} outside 1..{n_modes}")
    if rho.shape[0] != 2**n_modes:
        raise DimensionError(f"rho has dim {rho.shape[0]}, expected {2**n_modes}")
    # the projector is diagonal, so Tr[rho P] is a weighted sum of populations
    weights = np.real(np.diag(embed(projector, mode, n_modes)))
    return float(np.real(np.diag(rho)) @ weights)


def mean_yes(rho, mode=1, n_modes=None):
    """Tr[rho (I (x) .. (x) rho_0 (x) .. (x) I)], with rho_0 in slot ``mode`` (1-based)."""
    return _projected(rho, YES, mode, n_modes)


def mean_no(rho, mode=1, n_modes=None):
    return _projected(rho, NO, mode, n_modes)


def entropy(rho):
    """Von Neumann entropy in nats; eigenvalues below 1e-12 contribute zero."""
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    w = w[w > EIGEN_CLAMP]
    # an eigenvalue of 1 - eps gives -eps round-off; entropy is never negative
    return max(0.0, float(-np.sum(w * np.log(w))))


def purity(rho):
    # Tr(rho^2) = sum |rho_ij|^2 for hermitian rho
    return float(np.real(np.vdot(rho, rho)))


def trace_distance(rho_a, rho_b):
    if rho_a.shape != rho_b.shape:
        raise DimensionError(f"dimension mismatch: {rho_a.shape} vs {rho_b.shape}")
    # averaging both orders makes d(a, b) == d(b, a) bitwise
    return 0.5 * (_half_trace_norm(rho_a - rho_b) + _half_trace_norm(rho_b - rho_a))


def _half_trace_norm(diff):
    w = np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))
    return float(0.5 * np.sum(np.abs(w)))


def vector_distance(psi_a, psi_b, atol=1e-10):
    psi_a = np.asarray(psi_a, dtype=complex)
    psi_b = np.asarray(psi_b, dtype=complex)
    if psi_a.shape != psi_b.shape:
        raise DimensionError(f"dimension mismatch: {psi_a.shape} vs {psi_b.shape}")
    for v in (psi_a, psi_b):
        if abs(np.linalg.norm(v) - 1.0) > atol:
            raise ValueError(f"state vector is not normalized (norm {np.linalg.norm(v):.3g})")
    return float(np.linalg.norm(psi_a - psi_b))


def observe(rho, n_modes):
    """All per-sample observables of one density matrix, as a dict."""
    return {
        "mean_yes": [mean_yes(rho, j, n_modes) for j in range(1, n_modes + 1)],
        "mean_no": [mean_no(rho, j, n_modes) for j in range(1, n_modes + 1)],
        "entropy": entropy(rho),
        "purity": purity(rho),
    }
