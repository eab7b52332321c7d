"""Dense fermionic ladder operators and elementary matrix algebra.

Single-mode basis is ``(e_0, e_1)`` = ("yes", "no"). The lowering operator
maps ``e_1 -> e_0`` and kills ``e_0``. Multi-mode operators use a
Jordan-Wigner string, with mode 1 the leftmost (most significant) factor::

    a_j = Z (x) ... (x) Z (x) a (x) I (x) ... (x) I,   Z = diag(1, -1)
"""
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DimensionError, UnsupportedModeCount

MAX_MODES = 12

LOWER = np.array([[0, 1], [0, 0]], dtype=complex)
PARITY = np.diag([1, -1]).astype(complex)
YES = np.diag([1, 0]).astype(complex)  # rho_0 = |e_0><e_0|
NO = np.diag([0, 1]).astype(complex)  # rho_1 = |e_1><e_1|


def identity(dim):
    return np.eye(dim, dtype=complex)


def adjoint(m):
    return np.conj(np.transpose(m))


def kron(*factors):
    """Kronecker product of one or more square matrices, left to right."""
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


def commutator(a, b):
    _check_same_shape(a, b)
    return a @ b - b @ a


def anticommutator(a, b):
    _check_same_shape(a, b)
    return a @ b + b @ a


def embed(single, mode, n_modes):
    """Place a 2x2 operator in tensor slot ``mode`` (1-based), identities elsewhere."""
    if not 1 <= mode <= n_modes:
        raise DimensionError(f"mode {mode} outside 1..{n_modes}")
    factors = [identity(2)] * n_modes
    factors[mode - 1] = single
    return kron(*factors)


@dataclass(frozen=True)
class LadderSet:
    n_modes: int
    lowering: tuple
    raising: tuple

    @property
    def dim(self):
        return 2**self.n_modes

    def a(self, mode):
        """Lowering operator for a 1-based mode index."""
        return self.lowering[mode - 1]

    def ad(self, mode):
        """Raising operator for a 1-based mode index."""
        return self.raising[mode - 1]

    def number(self, mode):
        return self.ad(mode) @ self.a(mode)


def build_ladder_set(n_modes):
    if not isinstance(n_modes, (int, np.integer)) or not 1 <= n_modes <= MAX_MODES:
        raise UnsupportedModeCount(
            f"unsupported mode count {n_modes!r}: need 1 <= n_modes <= {MAX_MODES}"
        )
    lowering = []
    for j in range(n_modes):
        factors = [PARITY] * j + [LOWER] + [identity(2)] * (n_modes - j - 1)
        op = kron(*factors)
        op.setflags(write=False)
        lowering.append(op)
    raising = []
    for op in lowering:
        r = np.ascontiguousarray(adjoint(op))
        r.setflags(write=False)
        raising.append(r)
    return LadderSet(n_modes, tuple(lowering), tuple(raising))


def car_residual(ops):
    """Largest entrywise violation of {a_j, a_k^+} = delta_jk I and {a_j, a_k} = 0."""
    eye = identity(ops.dim)
    worst = 0.0
    for j in range(ops.n_modes):
        for k in range(ops.n_modes):
            target = eye if j == k else 0.0
            r1 = anticommutator(ops.lowering[j], ops.raising[k]) - target
            r2 = anticommutator(ops.lowering[j], ops.lowering[k])
            worst = max(worst, np.abs(r1).max(), np.abs(r2).max())
    return float(worst)
