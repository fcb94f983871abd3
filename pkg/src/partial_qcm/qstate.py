"""Qubit and two-qubit state model.

A two-partite pure state lives on H1 (x) H3 and is stored as its four
amplitudes ``a[i1, i3]``. Reducing it onto qubit 1 gives a one-qubit density
matrix, stored compactly as ``(A, B)`` with ``rho = [[A, B], [conj(B), 1 - A]]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import linmath
from .errors import DomainError, UsageError

NORM_ATOL = 1e-12
PSD_ATOL = 1e-12
UNITARY_ATOL = 1e-12


@dataclass(frozen=True)
class Amplitudes2Q:
    """Amplitudes of ``a00|00> + a01|01> + a10|10> + a11|11>`` on H1 (x) H3."""

    a00: complex
    a01: complex
    a10: complex
    a11: complex

    @classmethod
    def from_vector(cls, v) -> "Amplitudes2Q":
        v = np.asarray(v, dtype=complex).reshape(-1)
        if v.shape != (4,):
            raise UsageError(f"expected 4 amplitudes, got {v.size}")
        return cls(*(complex(x) for x in v))

    @classmethod
    def from_matrix(cls, m) -> "Amplitudes2Q":
        """Build from the amplitude matrix ``m[i1][i3]``."""
        return cls.from_vector(np.asarray(m, dtype=complex).reshape(4))

    def vector(self) -> np.ndarray:
        return np.array([self.a00, self.a01, self.a10, self.a11], dtype=complex)

    def matrix(self) -> np.ndarray:
        return self.vector().reshape(2, 2)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.vector()) ** 2))

    def is_normalized(self, atol: float = NORM_ATOL) -> bool:
        return abs(self.norm_sq() - 1.0) <= atol

    def canonical(self) -> "Amplitudes2Q":
        """Remove the global phase so that the first nonzero amplitude is real and positive.

        When ``a00 != 0`` this is the usual convention of a real, nonnegative ``a00``.
        """
        v = self.vector()
        nz = np.flatnonzero(np.abs(v) > 0.0)
        if nz.size == 0:
            return self
        lead = v[nz[0]]
        v = v * (abs(lead) / lead)
        v[nz[0]] = abs(lead)
        return Amplitudes2Q.from_vector(v)


@dataclass(frozen=True)
class QubitDensity:
    """One-qubit density matrix ``[[A, B], [conj(B), C]]`` with ``C = 1 - A``."""

    A: float
    B: complex = 0j

    @property
    def C(self) -> float:
        return 1.0 - self.A

    @classmethod
    def from_matrix(cls, m) -> "QubitDensity":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise UsageError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not linmath.is_hermitian(m):
            raise UsageError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(m).real - 1.0) > NORM_ATOL:
            raise UsageError(f"density matrix has trace {np.trace(m).real!r}, expected 1")
        return cls(float(m[0, 0].real), complex(m[0, 1]))

    def matrix(self) -> np.ndarray:
        return np.array([[self.A, self.B], [self.B.conjugate(), self.C]], dtype=complex)

    def det(self) -> float:
        return self.A * self.C - abs(self.B) ** 2

    def is_psd(self, atol: float = PSD_ATOL) -> bool:
        return -atol <= self.A <= 1.0 + atol and abs(self.B) ** 2 <= self.A * self.C + atol

    def check_psd(self) -> "QubitDensity":
        if not self.is_psd():
            raise DomainError(
                f"density (A={self.A!r}, B={self.B!r}) is not PSD: |B|^2 > A(1-A)"
            )
        return self


@dataclass(frozen=True)
class BlochPoint:
    """Spherical Bloch coordinates, angles in radians."""

    r: float
    theta: float = 0.0
    phi: float = 0.0

    def cartesian(self) -> tuple[float, float, float]:
        st = math.sin(self.theta)
        return (
            self.r * st * math.cos(self.phi),
            self.r * st * math.sin(self.phi),
            self.r * math.cos(self.theta),
        )


def reduce_first(psi: Amplitudes2Q) -> QubitDensity:
    """Trace out the spectator qubit, keeping qubit 1."""
    if not psi.is_normalized():
        raise UsageError(f"amplitudes are not normalized (norm^2 = {psi.norm_sq()!r})")
    A = abs(psi.a00) ** 2 + abs(psi.a01) ** 2
    B = psi.a00 * psi.a10.conjugate() + psi.a01 * psi.a11.conjugate()
    return QubitDensity(float(A), complex(B))


def purify(rho: QubitDensity) -> Amplitudes2Q:
    """Purification whose amplitude matrix is the principal square root of ``rho``."""
    return Amplitudes2Q.from_matrix(linmath.sqrt_psd2(rho.check_psd().matrix()))


def alt_purify(rho: QubitDensity, v) -> Amplitudes2Q:
    """Purification with amplitude matrix ``sqrt(rho) @ v`` for a unitary ``v``.

    Every purification of ``rho`` onto one spectator qubit has this form.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (2, 2):
        raise UsageError(f"expected a 2x2 unitary, got shape {v.shape}")
    if np.max(np.abs(v @ v.conj().T - np.eye(2))) > UNITARY_ATOL:
        raise UsageError("v is not unitary within 1e-12")
    return Amplitudes2Q.from_matrix(linmath.sqrt_psd2(rho.check_psd().matrix()) @ v)


def bloch_to_density(p: BlochPoint) -> QubitDensity:
    if not 0.0 <= p.r <= 1.0:
        raise UsageError(f"Bloch radius must lie in [0, 1], got {p.r!r}")
    A = 0.5 * (1.0 + p.r * math.cos(p.theta))
    B = 0.5 * p.r * math.sin(p.theta) * cmath.exp(-1j * p.phi)
    return QubitDensity(A, B)


def density_to_bloch(rho: QubitDensity) -> BlochPoint:
    """Inverse of :func:`bloch_to_density`; angles are 0 at the centre of the ball."""
    rho.check_psd()
    p1, p2, p3 = 2.0 * rho.B.real, -2.0 * rho.B.imag, 2.0 * rho.A - 1.0
    r = math.sqrt(p1 * p1 + p2 * p2 + p3 * p3)
    if r == 0.0:
        return BlochPoint(0.0, 0.0, 0.0)
    theta = math.atan2(math.hypot(p1, p2), p3)
    phi = math.atan2(p2, p1) % (2.0 * math.pi)
    return BlochPoint(min(r, 1.0), theta, phi)


def fidelity(rho1: QubitDensity, rho2: QubitDensity) -> float:
    """Uhlmann fidelity of two qubit states.

    For 2x2 states ``F = tr(rho1 rho2) + 2 sqrt(det(rho1) det(rho2))``.
    """
    rho1.check_psd()
    rho2.check_psd()
    overlap = (
        rho1.A * rho2.A
        + rho1.C * rho2.C
        + 2.0 * (rho1.B * rho2.B.conjugate()).real
    )
    dets = max(rho1.det(), 0.0) * max(rho2.det(), 0.0)
    return float(min(max(overlap + 2.0 * math.sqrt(dets), 0.0), 1.0))


def fidelity_definitional(rho1: QubitDensity, rho2: QubitDensity) -> float:
    """``[tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2`` evaluated with matrix square roots."""
    s = linmath.sqrt_psd2(rho1.check_psd().matrix())
    inner = s @ rho2.check_psd().matrix() @ s
    inner = 0.5 * (inner + inner.conj().T)
    return float(np.trace(linmath.sqrt_psd2(inner)).real ** 2)


def hs_dist_sq(m1, m2) -> float:
    """Squared Hilbert-Schmidt distance ``tr[(m1 - m2)^2]`` of Hermitian matrices."""
    m1 = np.asarray(m1)
    m2 = np.asarray(m2)
    if m1.ndim != 2 or m1.shape[0] != m1.shape[1] or m1.shape != m2.shape:
        raise UsageError(f"shape mismatch: {m1.shape} vs {m2.shape}")
    return float(np.sum(np.abs(m1 - m2) ** 2))
