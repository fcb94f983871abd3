"""Small dense complex linear algebra.

Vectors are 1-d and matrices 2-d complex ``numpy`` arrays. Composite spaces
use Kronecker ordering with the first subsystem as the slowest index, so for
H1 (x) H2 (x) H3 (x) H4 with dims (2, 2, 2, 4) the flat index is
``((i1*2 + i2)*2 + i3)*4 + i4``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DomainError, UsageError

HERMITIAN_ATOL = 1e-12
PSD_ATOL = 1e-12


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two vectors or two matrices (``a`` is the slow index)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise UsageError(
            f"tensor needs two vectors or two matrices, got ndim {a.ndim} and {b.ndim}"
        )
    return np.kron(a, b)


def is_hermitian(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= atol)


def partial_trace(m: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem of ``m`` whose (0-based) index is not in ``keep``.

    The kept subsystems appear in the result in their original order.
    """
    m = np.asarray(m)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise UsageError(f"subsystem dimensions must be positive, got {dims}")
    n = int(np.prod(dims))
    if m.ndim != 2 or m.shape != (n, n):
        raise UsageError(f"matrix of shape {m.shape} does not match dims {dims}")
    keep = sorted(set(int(k) for k in keep))
    if not keep or len(keep) == len(dims) or keep[0] < 0 or keep[-1] >= len(dims):
        raise UsageError(f"keep must be a nonempty proper subset of 0..{len(dims) - 1}")

    nsys = len(dims)
    t = m.reshape(dims + dims)
    # einsum subscripts: row index i, column index i (traced) or j (kept)
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:nsys])
    cols = [rows[k] if k not in keep else letters[nsys + k] for k in range(nsys)]
    out = [rows[k] for k in keep] + [cols[k] for k in keep]
    subscripts = "".join(rows) + "".join(cols) + "->" + "".join(out)
    d = int(np.prod([dims[k] for k in keep]))
    return np.einsum(subscripts, t).reshape(d, d)


def _check_herm2(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise UsageError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not is_hermitian(m):
        raise UsageError("matrix is not Hermitian within 1e-12")
    return m


def herm_eig2(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigendecomposition of a 2x2 Hermitian matrix.

    Returns:
        ``(eigenvalues, eigenvectors)`` with eigenvalues descending and the
        eigenvectors as the *columns* of a unitary 2x2 array.
    """
    m = _check_herm2(m)
    a, d = m[0, 0].real, m[1, 1].real
    b = m[0, 1]
    mean = 0.5 * (a + d)
    z = 0.5 * (a - d)
    # m = mean*I + x*sx + y*sy + z*sz with b = x - i*y
    x, y = b.real, -b.imag
    rxy = np.hypot(x, y)
    rad = np.hypot(z, rxy)
    vals = np.array([mean + rad, mean - rad])
    if rad == 0.0:
        return vals, np.eye(2, dtype=complex)
    polar = np.arctan2(rxy, z)
    phase = np.exp(1j * np.arctan2(y, x))
    c, s = np.cos(0.5 * polar), np.sin(0.5 * polar)
    vecs = np.array([[c, -s * phase.conjugate()], [s * phase, c]], dtype=complex)
    return vals, vecs


def sqrt_psd2(m: np.ndarray) -> np.ndarray:
    """Principal square root of a 2x2 PSD matrix.

    Uses sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)), which holds
    for any 2x2 PSD matrix. Eigenvalues in [-1e-12, 0) are treated as zero.
    """
    m = _check_herm2(m)
    vals, _ = herm_eig2(m)
    if vals[1] < -PSD_ATOL:
        raise DomainError(f"matrix is not PSD (smallest eigenvalue {vals[1]:.3e})")
    lo, hi = max(vals[1], 0.0), max(vals[0], 0.0)
    sdet = np.sqrt(lo * hi)
    denom = np.sqrt(lo + hi + 2.0 * sdet)
    if denom == 0.0:
        return np.zeros((2, 2), dtype=complex)
    out = (m + sdet * np.eye(2)) / denom
    # symmetrize away rounding in the off-diagonal
    return 0.5 * (out + out.conj().T)
