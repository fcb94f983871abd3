import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partial_qcm.errors import DomainError, UsageError
from partial_qcm.linmath import herm_eig2, is_hermitian, partial_trace, sqrt_psd2, tensor

SX = np.array([[0, 1], [1, 0]], dtype=complex)


def loop_partial_trace(m, dims, keep):
    """Reference partial trace by explicit summation over multi-indices."""
    keep = sorted(keep)
    kdims = [dims[k] for k in keep]
    d = int(np.prod(kdims))
    out = np.zeros((d, d), dtype=complex)

    def flat(idx):
        f = 0
        for i, n in zip(idx, dims):
            f = f * n + i
        return f

    def kflat(idx):
        f = 0
        for k, n in zip(keep, kdims):
            f = f * n + idx[k]
        return f

    for row in itertools.product(*(range(n) for n in dims)):
        for col in itertools.product(*(range(n) for n in dims)):
            if all(row[k] == col[k] for k in range(len(dims)) if k not in keep):
                out[kflat(row), kflat(col)] += m[flat(row), flat(col)]
    return out


def random_hermitian(g, n):
    x = g.normal(size=(n, n)) + 1j * g.normal(size=(n, n))
    return x + x.conj().T


def random_psd(g, n):
    x = g.normal(size=(n, n)) + 1j * g.normal(size=(n, n))
    m = x @ x.conj().T
    return m / np.trace(m).real


def test_tensor_identity():
    np.testing.assert_array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_vector_index_convention():
    e0, e1 = np.eye(2)
    np.testing.assert_array_equal(tensor(e0, e1), np.eye(4)[1])


def test_tensor_operator_action():
    e0 = np.eye(2)[0]
    out = tensor(SX, SX) @ tensor(e0, e0)
    np.testing.assert_array_equal(out, np.eye(4)[3])


def test_tensor_mixed_kinds():
    with pytest.raises(UsageError):
        tensor(np.eye(2), np.ones(2))


@given(st.integers(0, 2**32 - 1))
def test_tensor_associative_exact(seed):
    # integer entries keep every product exact, so equality is bitwise
    g = np.random.default_rng(seed)
    a, b, c = (g.integers(-9, 10, (2, 2)) + 1j * g.integers(-9, 10, (2, 2)) for _ in range(3))
    np.testing.assert_array_equal(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))


@given(st.integers(0, 2**32 - 1))
def test_tensor_associative_float(seed):
    g = np.random.default_rng(seed)
    a, b, c = (g.normal(size=(2, 2)) + 1j * g.normal(size=(2, 2)) for _ in range(3))
    np.testing.assert_allclose(tensor(tensor(a, b), c), tensor(a, tensor(b, c)), rtol=0, atol=1e-13)


def test_partial_trace_product_state():
    psi = np.array([1, 0, 0, 0], dtype=complex)
    out = partial_trace(np.outer(psi, psi.conj()), (2, 2), keep=[0])
    np.testing.assert_allclose(out, [[1, 0], [0, 0]], atol=1e-15)


def test_partial_trace_bell_state():
    psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    out = partial_trace(np.outer(psi, psi.conj()), (2, 2), keep=[0])
    np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_uniform_amplitudes():
    # A = |a00|^2 + |a01|^2 = 1/2, B = a00 conj(a10) + a01 conj(a11) = 1/2
    psi = np.full(4, 0.5, dtype=complex)
    out = partial_trace(np.outer(psi, psi.conj()), (2, 2), keep=[0])
    np.testing.assert_allclose(out, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)


@pytest.mark.parametrize(
    "dims, keep",
    [((2, 2), [1]), ((2, 2, 2), [0, 2]), ((2, 2, 2, 4), [0, 1]), ((2, 2, 2, 4), [2]), ((3, 2), [0])],
)
def test_partial_trace_matches_loop(dims, keep):
    g = np.random.default_rng(7)
    m = random_hermitian(g, int(np.prod(dims)))
    np.testing.assert_allclose(partial_trace(m, dims, keep), loop_partial_trace(m, dims, keep), atol=1e-12)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_partial_trace_preserves_trace_and_psd(seed):
    g = np.random.default_rng(seed)
    m = random_psd(g, 32)
    out = partial_trace(m, (2, 2, 2, 4), keep=[0, 1])
    assert abs(np.trace(out) - np.trace(m)) <= 1e-12
    assert is_hermitian(out)
    assert np.linalg.eigvalsh(out).min() >= -1e-12


@pytest.mark.parametrize(
    "dims, keep",
    [((2, 3), [0]), ((2, 2), []), ((2, 2), [0, 1]), ((2, 2), [2])],
)
def test_partial_trace_usage_errors(dims, keep):
    with pytest.raises(UsageError):
        partial_trace(np.eye(4), dims, keep)


def test_herm_eig2_degenerate():
    vals, vecs = herm_eig2(np.eye(2) / 2)
    np.testing.assert_allclose(vals, [0.5, 0.5])
    np.testing.assert_allclose(vecs.conj().T @ vecs, np.eye(2), atol=1e-15)


def test_herm_eig2_projector():
    vals, vecs = herm_eig2(np.diag([1.0, 0.0]))
    np.testing.assert_allclose(vals, [1.0, 0.0])
    np.testing.assert_allclose(np.abs(vecs), np.eye(2), atol=1e-15)


def test_herm_eig2_all_half():
    # characteristic polynomial l^2 - l = 0
    vals, _ = herm_eig2(np.full((2, 2), 0.5))
    np.testing.assert_allclose(vals, [1.0, 0.0], atol=1e-15)


@given(st.integers(0, 2**32 - 1))
def test_herm_eig2_random(seed):
    m = random_hermitian(np.random.default_rng(seed), 2)
    vals, vecs = herm_eig2(m)
    assert vals[0] >= vals[1]
    np.testing.assert_allclose(vals, np.linalg.eigvalsh(m)[::-1], atol=1e-12)
    for k in range(2):
        np.testing.assert_allclose(m @ vecs[:, k], vals[k] * vecs[:, k], atol=1e-12)
    np.testing.assert_allclose(vecs @ np.diag(vals) @ vecs.conj().T, m, atol=1e-12)


def test_herm_eig2_rejects_non_hermitian():
    with pytest.raises(UsageError):
        herm_eig2(np.array([[0, 1], [0, 0]]))


def test_sqrt_psd2_fixed_points():
    np.testing.assert_allclose(sqrt_psd2(np.eye(2)), np.eye(2), atol=1e-15)
    np.testing.assert_allclose(sqrt_psd2(np.diag([1.0, 0.0])), np.diag([1.0, 0.0]), atol=1e-15)


@given(st.integers(0, 2**32 - 1))
def test_sqrt_psd2_squares_back(seed):
    m = random_psd(np.random.default_rng(seed), 2)
    s = sqrt_psd2(m)
    assert is_hermitian(s)
    assert np.linalg.eigvalsh(s).min() >= -1e-12
    np.testing.assert_allclose(s @ s, m, atol=1e-10)


def test_sqrt_psd2_clamps_tiny_negative():
    s = sqrt_psd2(np.diag([1.0, -5e-13]))
    np.testing.assert_allclose(s @ s, np.diag([1.0, 0.0]), atol=1e-12)


def test_sqrt_psd2_rejects_negative():
    with pytest.raises(DomainError):
        sqrt_psd2(np.diag([1.0, -1e-6]))
