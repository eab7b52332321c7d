import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qparliament.errors import DimensionError
from qparliament.observables import (
    entropy, mean_no, mean_yes, purity, trace_distance, vector_distance,
)
from qparliament.operators import NO, YES, identity, kron

from helpers import random_density, random_unitary, seeds


def qubit(theta, phi):
    return np.array([np.cos(theta / 2), np.sin(theta / 2) * np.exp(1j * phi)])


def proj(psi):
    return np.outer(psi, psi.conj())


def literal_mean_yes(rho, mode, n):
    """Tr[rho (I (x) .. rho_0 .. (x) I)] with the full Kronecker sandwich."""
    factors = [identity(2)] * n
    factors[mode - 1] = YES
    return np.trace(rho @ kron(*factors)).real


def test_projector_pair():
    np.testing.assert_array_equal(YES + NO, identity(2))
    np.testing.assert_array_equal(YES @ YES, YES)
    np.testing.assert_array_equal(NO @ NO, NO)


def test_mean_yes_examples():
    assert mean_yes(YES) == 1.0
    psi = np.array([np.sqrt(0.7), np.sqrt(0.3)])
    assert abs(mean_yes(proj(psi)) - 0.7) < 1e-15
    two = kron(proj(np.sqrt([0.6, 0.4])), proj(np.sqrt([0.4, 0.6])))
    assert abs(mean_yes(two, 1, 2) - 0.6) < 1e-15
    assert abs(mean_yes(two, 2, 2) - 0.4) < 1e-15


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from([1, 2, 3]))
def test_mean_yes_matches_sandwich_and_complements(seed, n):
    rho = random_density(2**n, np.random.default_rng(seed))
    for j in range(1, n + 1):
        y = mean_yes(rho, j, n)
        assert abs(y - literal_mean_yes(rho, j, n)) < 1e-12
        assert abs(y + mean_no(rho, j, n) - 1) < 1e-10
        assert -1e-12 <= y <= 1 + 1e-12


def test_mean_yes_mode_out_of_range():
    with pytest.raises(DimensionError):
        mean_yes(np.eye(4) / 4, 3, 2)
    with pytest.raises(DimensionError):
        mean_yes(np.eye(4) / 4, 0)


def test_entropy_examples():
    assert abs(entropy(proj(qubit(1.1, 0.3)))) < 1e-8
    assert abs(entropy(0.5 * YES + 0.5 * NO) - np.log(2)) < 1e-15
    expected = -0.9 * np.log(0.9) - 0.1 * np.log(0.1)
    assert abs(entropy(0.9 * YES + 0.1 * NO) - expected) < 1e-15
    assert abs(expected - 0.3251) < 1e-4


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from([2, 4, 8]))
def test_entropy_unitarily_invariant_and_bounded(seed, dim):
    rng = np.random.default_rng(seed)
    rho = random_density(dim, rng)
    u = random_unitary(dim, rng)
    s = entropy(rho)
    assert abs(entropy(u @ rho @ u.conj().T) - s) < 1e-8
    assert 0 <= s <= np.log(dim) + 1e-12


def test_purity_examples():
    assert abs(purity(proj(qubit(0.4, 2.0))) - 1) < 1e-15
    assert purity(0.5 * YES + 0.5 * NO) == 0.5
    assert abs(purity(np.eye(4) / 4) - 0.25) < 1e-15


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from([2, 4, 8]))
def test_purity_bounds(seed, dim):
    rho = random_density(dim, np.random.default_rng(seed))
    p = purity(rho)
    assert abs(p - np.trace(rho @ rho).real) < 1e-12
    assert 1 / dim - 1e-12 <= p <= 1 + 1e-12


def test_trace_distance_examples():
    rho = random_density(4, np.random.default_rng(3))
    assert trace_distance(rho, rho) == 0
    assert abs(trace_distance(YES, NO) - 1) < 1e-15


@pytest.mark.parametrize("theta", np.linspace(0, np.pi, 7))
def test_trace_distance_to_yes_is_phase_blind(theta):
    values = [trace_distance(proj(qubit(theta, phi)), YES) for phi in np.linspace(0, 2 * np.pi, 13)]
    np.testing.assert_allclose(values, np.sin(theta / 2), atol=1e-12)
    to_no = [trace_distance(proj(qubit(theta, phi)), NO) for phi in np.linspace(0, 2 * np.pi, 13)]
    np.testing.assert_allclose(to_no, np.cos(theta / 2), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from([2, 4]))
def test_trace_distance_is_metric(seed, dim):
    rng = np.random.default_rng(seed)
    a, b, c = (random_density(dim, rng) for _ in range(3))
    assert trace_distance(a, b) == trace_distance(b, a)
    assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12
    assert trace_distance(a, b) >= 0


def test_trace_distance_dimension_mismatch():
    with pytest.raises(DimensionError):
        trace_distance(YES, np.eye(4) / 4)


def test_vector_distance_examples():
    psi = qubit(0.8, 1.3)
    assert vector_distance(psi, psi) == 0
    assert abs(vector_distance([1, 0], [0, 1]) - np.sqrt(2)) < 1e-15


def test_vector_distance_sees_the_phase():
    # |psi - e_0|^2 = |alpha - 1|^2 + |beta|^2 carries no phase, so compare with e_1
    a = vector_distance(qubit(np.pi / 2, 0.0), [0, 1])
    b = vector_distance(qubit(np.pi / 2, np.pi), [0, 1])
    assert abs(a - np.sqrt(2 - np.sqrt(2))) < 1e-12
    assert abs(b - np.sqrt(2 + np.sqrt(2))) < 1e-12
    # trace distance to the same reference cannot tell them apart
    assert abs(trace_distance(proj(qubit(np.pi / 2, 0.0)), NO)
               - trace_distance(proj(qubit(np.pi / 2, np.pi)), NO)) < 1e-12


def test_vector_distance_rejects_unnormalized():
    with pytest.raises(ValueError, match="normalized"):
        vector_distance([1, 1], [1, 0])
