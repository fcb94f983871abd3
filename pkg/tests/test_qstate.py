import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partial_qcm import linmath
from partial_qcm.errors import DomainError, UsageError
from partial_qcm.qstate import (
    Amplitudes2Q,
    BlochPoint,
    QubitDensity,
    alt_purify,
    bloch_to_density,
    density_to_bloch,
    fidelity,
    fidelity_definitional,
    hs_dist_sq,
    purify,
    reduce_first,
)
from partial_qcm.verify import random_amplitudes, random_density, random_unitary

SX = np.array([[0, 1], [1, 0]], dtype=complex)
seeds = st.integers(0, 2**32 - 1)


def close(rho1, rho2, atol):
    return abs(rho1.A - rho2.A) <= atol and abs(rho1.B - rho2.B) <= atol


def test_reduce_first_examples():
    assert reduce_first(Amplitudes2Q(1, 0, 0, 0)) == QubitDensity(1.0, 0j)
    s = 1 / math.sqrt(2)
    rho = reduce_first(Amplitudes2Q(s, 0, 0, s))
    assert rho.A == pytest.approx(0.5) and rho.B == 0
    rho = reduce_first(Amplitudes2Q(0.5, 0.5, 0.5, 0.5))
    assert rho.A == pytest.approx(0.5) and rho.B == pytest.approx(0.5)


def test_reduce_first_rejects_unnormalized():
    with pytest.raises(UsageError):
        reduce_first(Amplitudes2Q(1, 1, 0, 0))


@given(seeds)
def test_reduce_first_matches_partial_trace(seed):
    psi = random_amplitudes(np.random.default_rng(seed))
    v = psi.vector()
    ref = linmath.partial_trace(np.outer(v, v.conj()), (2, 2), keep=[0])
    np.testing.assert_allclose(reduce_first(psi).matrix(), ref, atol=1e-12)


@given(seeds)
def test_reduce_first_ignores_spectator_unitary(seed):
    g = np.random.default_rng(seed)
    psi = random_amplitudes(g)
    u = random_unitary(g)
    # a unitary on the spectator acts on the amplitude matrix from the right: a[i1, :] -> u a[i1, :]
    moved = Amplitudes2Q.from_matrix(psi.matrix() @ u.T)
    assert close(reduce_first(psi), reduce_first(moved), 1e-12)


def test_canonical_removes_global_phase():
    psi = Amplitudes2Q(1j / math.sqrt(2), 0, 0, -1 / math.sqrt(2)).canonical()
    assert psi.a00 == pytest.approx(1 / math.sqrt(2))
    assert psi.a11 == pytest.approx(1j / math.sqrt(2))
    assert Amplitudes2Q(0, 1j, 0, 0).canonical() == Amplitudes2Q(0, 1, 0, 0)


def test_purify_examples():
    assert purify(QubitDensity(1.0, 0j)) == Amplitudes2Q(1, 0, 0, 0)
    psi = purify(QubitDensity(0.5, 0j))
    np.testing.assert_allclose(psi.vector(), [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)], atol=1e-15)


@given(seeds)
def test_purify_round_trip(seed):
    g = np.random.default_rng(seed)
    rho = random_density(g)
    assert close(reduce_first(purify(rho)), rho, 1e-10)
    assert close(reduce_first(alt_purify(rho, random_unitary(g))), rho, 1e-10)


def test_purify_rejects_non_psd():
    with pytest.raises(DomainError):
        purify(QubitDensity(0.5, 0.6))


def test_alt_purify_examples():
    rho = QubitDensity(0.3, 0.2 - 0.1j)
    assert alt_purify(rho, np.eye(2)) == purify(rho)
    np.testing.assert_allclose(alt_purify(QubitDensity(1.0), SX).vector(), [0, 1, 0, 0], atol=1e-15)


def test_alt_purify_rejects_non_unitary():
    with pytest.raises(UsageError):
        alt_purify(QubitDensity(0.5), np.diag([1.0, 0.5]))


def test_bloch_to_density_examples():
    assert bloch_to_density(BlochPoint(0.0)) == QubitDensity(0.5, 0j)
    rho = bloch_to_density(BlochPoint(1.0, 0.0, 0.0))
    assert rho.A == 1.0 and rho.B == 0
    rho = bloch_to_density(BlochPoint(1.0, math.pi / 2, 0.0))
    assert rho.A == pytest.approx(0.5) and rho.B == pytest.approx(0.5)


def test_bloch_to_density_matches_pauli_form():
    p = BlochPoint(0.8, 1.1, 2.3)
    p1, p2, p3 = p.cartesian()
    ref = 0.5 * np.array([[1 + p3, p1 - 1j * p2], [p1 + 1j * p2, 1 - p3]])
    np.testing.assert_allclose(bloch_to_density(p).matrix(), ref, atol=1e-15)


def test_bloch_to_density_rejects_outside_ball():
    with pytest.raises(UsageError):
        bloch_to_density(BlochPoint(1.5))


def test_density_to_bloch_examples():
    assert density_to_bloch(QubitDensity(0.5)) == BlochPoint(0.0, 0.0, 0.0)
    p = density_to_bloch(QubitDensity(1.0))
    assert p.r == pytest.approx(1.0) and p.theta == 0.0
    p = density_to_bloch(QubitDensity(0.75, 0.25))
    assert p.r == pytest.approx(math.hypot(0.5, 0.5))


@given(seeds)
def test_density_bloch_round_trip(seed):
    rho = random_density(np.random.default_rng(seed))
    assert close(bloch_to_density(density_to_bloch(rho)), rho, 1e-12)


def test_density_to_bloch_rejects_non_psd():
    with pytest.raises(DomainError):
        density_to_bloch(QubitDensity(0.9, 0.5))


def test_fidelity_examples():
    rho = QubitDensity(0.3, 0.1 + 0.2j)
    assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(QubitDensity(1.0), QubitDensity(0.0)) == 0.0


@given(seeds)
def test_fidelity_closed_form_matches_definition(seed):
    g = np.random.default_rng(seed)
    r1, r2 = random_density(g), random_density(g)
    f = fidelity(r1, r2)
    assert abs(f - fidelity_definitional(r1, r2)) <= 1e-10
    assert abs(f - fidelity(r2, r1)) <= 1e-12
    assert 0.0 <= f <= 1.0


@given(seeds)
def test_fidelity_of_pure_states_is_overlap(seed):
    g = np.random.default_rng(seed)
    u, v = (x / np.linalg.norm(x) for x in (g.normal(size=2) + 1j * g.normal(size=2) for _ in range(2)))
    pu = QubitDensity.from_matrix(np.outer(u, u.conj()))
    pv = QubitDensity.from_matrix(np.outer(v, v.conj()))
    assert abs(fidelity(pu, pv) - abs(np.vdot(u, v)) ** 2) <= 1e-12


def test_fidelity_is_one_only_for_equal_states():
    rho = QubitDensity(0.4, 0.1j)
    assert fidelity(rho, QubitDensity(0.4, 0.1j + 1e-3)) < 1.0 - 1e-10


def test_fidelity_rejects_non_psd():
    with pytest.raises(DomainError):
        fidelity(QubitDensity(0.5, 0.7), QubitDensity(0.5))


def test_hs_dist_sq_examples():
    m = np.array([[0.3, 0.1j], [-0.1j, 0.7]])
    assert hs_dist_sq(m, m) == 0.0
    assert hs_dist_sq(np.eye(2), np.zeros((2, 2))) == 2.0
    assert hs_dist_sq(np.diag([1.0, 0.0]), np.eye(2) / 2) == pytest.approx(0.5)


def test_hs_dist_sq_is_trace_of_square():
    g = np.random.default_rng(3)
    x = g.normal(size=(4, 4)) + 1j * g.normal(size=(4, 4))
    y = g.normal(size=(4, 4)) + 1j * g.normal(size=(4, 4))
    m1, m2 = x + x.conj().T, y + y.conj().T
    d = m1 - m2
    assert hs_dist_sq(m1, m2) == pytest.approx(np.trace(d @ d).real, rel=1e-12)
    assert hs_dist_sq(m1, m1 + 1e-7) > 0.0


def test_hs_dist_sq_shape_mismatch():
    with pytest.raises(UsageError):
        hs_dist_sq(np.eye(2), np.eye(4))
