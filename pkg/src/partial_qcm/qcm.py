"""The symmetric "partial" cloning machine.

Qubit 1 of a two-qubit pure state is copied onto a blank qubit 2 (prepared in
``|0>``) with the help of a 4-dimensional ancilla (two qubits) on H4; qubit 3 is
a spectator. The machine acts as

    U|0_1 0_2 0_4> = |Phi1>|Q0> + |Phi2>|Y0>
    U|1_1 0_2 0_4> = |Phi3>|Q1> + |Phi2>|Y1>

with ``Phi1..Phi3`` spanning the swap-symmetric subspace of H1 (x) H2. The
ancilla vectors are fixed up to isometry by two numbers ``(zeta, nu)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linmath
from .errors import DomainError, UsageError
from .qstate import Amplitudes2Q, QubitDensity, hs_dist_sq

ANCILLA_DIM = 4
FRAME_ATOL = 1e-12
XI_DIMS = (2, 2, 2, ANCILLA_DIM)

_SQRT2 = math.sqrt(2.0)

PHI1 = np.array([1, 0, 0, 0], dtype=complex)
PHI2 = np.array([0, 1, 1, 0], dtype=complex) / _SQRT2
PHI3 = np.array([0, 0, 0, 1], dtype=complex)
# antisymmetric complement, used only to check the output support
PHI4 = np.array([0, -1, 1, 0], dtype=complex) / _SQRT2
SYM_BASIS = (PHI1, PHI2, PHI3)

_P11 = np.outer(PHI1, PHI1.conj())
_P22 = np.outer(PHI2, PHI2.conj())
_P33 = np.outer(PHI3, PHI3.conj())
_COHERENCE = np.outer(PHI1, PHI2.conj()) + np.outer(PHI2, PHI3.conj())
for _m in (_P11, _P22, _P33, _COHERENCE):
    _m.flags.writeable = False

# swap of the two clone qubits on H1 (x) H2
SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]


@dataclass(frozen=True)
class ClonerParams:
    """Machine parameters: ``zeta = <Q_k|Q_k>``, ``nu`` scales ``<Y1|Q0> = <Q1|Y0>``."""

    zeta: float
    nu: float = 1.0

    def __post_init__(self):
        for name in ("zeta", "nu"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and 0.0 <= value <= 1.0):
                raise UsageError(f"{name} must lie in [0, 1], got {value!r}")

    @property
    def coherence(self) -> float:
        """``nu * sqrt(zeta (1 - zeta))``, the common value of the two cross overlaps."""
        return self.nu * math.sqrt(self.zeta * (1.0 - self.zeta))


@dataclass(frozen=True)
class AncillaFrame:
    """Concrete ancilla vectors ``Q0, Q1, Y0, Y1`` in C^4."""

    q0: np.ndarray
    q1: np.ndarray
    y0: np.ndarray
    y1: np.ndarray

    def constraint_residuals(self, p: ClonerParams) -> dict[str, float]:
        """Absolute deviation of every norm/overlap constraint from its target value."""
        ip = np.vdot
        s = p.coherence
        targets = {
            "<q0|q0>=zeta": (ip(self.q0, self.q0), p.zeta),
            "<q1|q1>=zeta": (ip(self.q1, self.q1), p.zeta),
            "<y0|y0>=1-zeta": (ip(self.y0, self.y0), 1.0 - p.zeta),
            "<y1|y1>=1-zeta": (ip(self.y1, self.y1), 1.0 - p.zeta),
            "<y0|y1>=0": (ip(self.y0, self.y1), 0.0),
            "<q0|q1>=0": (ip(self.q0, self.q1), 0.0),
            "<q0|y0>=0": (ip(self.q0, self.y0), 0.0),
            "<q1|y1>=0": (ip(self.q1, self.y1), 0.0),
            "<y1|q0>=nu*s": (ip(self.y1, self.q0), s),
            "<q1|y0>=nu*s": (ip(self.q1, self.y0), s),
        }
        return {k: float(abs(v - t)) for k, (v, t) in targets.items()}

    def unitarity_residual(self) -> float:
        """Largest violation of the conditions making ``U`` an isometry on the input space."""
        ip = np.vdot
        res = [
            ip(self.q0, self.q0) + ip(self.y0, self.y0) - 1.0,
            ip(self.q1, self.q1) + ip(self.y1, self.y1) - 1.0,
            ip(self.y0, self.y1),
            ip(self.q0, self.q1),
            ip(self.q0, self.y0),
            ip(self.q1, self.y1),
        ]
        return float(max(abs(r) for r in res))


def build_ancilla_frame(p: ClonerParams) -> AncillaFrame:
    """Smallest-dimension frame realizing ``p``.

    With ``e0..e3`` the ancilla basis: ``q0 = sqrt(z) e0``, ``q1 = sqrt(z) e1``,
    ``y0 = sqrt(1-z) (nu e1 + sqrt(1-nu^2) e2)``, ``y1 = sqrt(1-z) (nu e0 + sqrt(1-nu^2) e3)``.
    """
    if not isinstance(p, ClonerParams):
        raise UsageError(f"expected ClonerParams, got {type(p).__name__}")
    e = np.eye(ANCILLA_DIM, dtype=complex)
    sz = math.sqrt(p.zeta)
    sy = math.sqrt(1.0 - p.zeta)
    perp = math.sqrt(max(1.0 - p.nu * p.nu, 0.0))
    return AncillaFrame(
        q0=sz * e[0],
        q1=sz * e[1],
        y0=sy * (p.nu * e[1] + perp * e[2]),
        y1=sy * (p.nu * e[0] + perp * e[3]),
    )


def apply_qcm(psi: Amplitudes2Q, frame: AncillaFrame) -> np.ndarray:
    """Output state ``|Xi> = U|psi, 0_2, 0_4>`` on H1 (x) H2 (x) H3 (x) H4 (dimension 32)."""
    if not psi.is_normalized():
        raise UsageError(f"amplitudes are not normalized (norm^2 = {psi.norm_sq()!r})")
    if frame.unitarity_residual() > FRAME_ATOL:
        raise UsageError("ancilla frame violates the unitarity conditions")
    # images of |i1 0_2 0_4>, indexed [i1][o1*2+o2, ancilla]
    images = np.stack([
        np.outer(PHI1, frame.q0) + np.outer(PHI2, frame.y0),
        np.outer(PHI3, frame.q1) + np.outer(PHI2, frame.y1),
    ])
    a = psi.matrix()  # a[i1, i3]
    xi = np.einsum("ik,iqa->qka", a, images)  # (o1 o2), i3, ancilla
    return xi.reshape(-1)


def joint_output(rho: QubitDensity, p: ClonerParams) -> np.ndarray:
    """Two-clone state ``rho_out^(12)`` in the computational basis of H1 (x) H2."""
    rho.check_psd()
    c = rho.B * p.coherence
    return (
        rho.A * p.zeta * _P11
        + rho.C * p.zeta * _P33
        + (1.0 - p.zeta) * _P22
        + c * _COHERENCE
        + c.conjugate() * _COHERENCE.conj().T
    )


def single_output(rho: QubitDensity, p: ClonerParams) -> QubitDensity:
    """State of one clone: ``A' = 1/2 - zeta (1/2 - A)``, ``B' = B nu sqrt(2 zeta (1 - zeta))``."""
    rho.check_psd()
    A = 0.5 - p.zeta * (0.5 - rho.A)
    B = rho.B * _SQRT2 * p.coherence
    return QubitDensity(A, B)


def w_moments(A, b2, b4, zeta, nu):
    """Closed-form distance written in terms of ``|B|^2`` and ``|B|^4``.

    The distance is linear in these two powers, so passing their averages
    over a phase distribution gives the phase-averaged distance. Arguments
    broadcast; nothing is validated.
    """
    A = np.asarray(A, dtype=float)
    C = 1.0 - A
    s = nu * np.sqrt((1.0 - zeta) * zeta)
    return (
        A**2 * (A - zeta) ** 2
        + C**2 * (C - zeta) ** 2
        + (1.0 - zeta) ** 2
        + 2.0 * (A**2 * C**2 + 2.0 * b4)
        + 2.0 * b2 * ((_SQRT2 * A - s) ** 2 + (_SQRT2 * C - s) ** 2)
        - 2.0 * (1.0 - zeta) * (A * C + b2)
    )


def w_terms(A, absB, zeta, nu):
    """Vectorized closed-form distance at a definite ``|B|``."""
    b2 = np.asarray(absB, dtype=float) ** 2
    return w_moments(A, b2, b2 * b2, zeta, nu)


def w_closed(p: ClonerParams, A: float, absB: float) -> float:
    """``tr[(rho (x) rho - rho_out^(12))^2]`` from the explicit polynomial in ``A, |B|``."""
    if not 0.0 <= A <= 1.0:
        raise UsageError(f"A must lie in [0, 1], got {A!r}")
    if absB < 0.0:
        raise UsageError(f"|B| must be nonnegative, got {absB!r}")
    if absB * absB > A * (1.0 - A) + 1e-12:
        raise DomainError(f"|B|^2 = {absB * absB!r} exceeds A(1-A) = {A * (1.0 - A)!r}")
    return float(w_terms(A, absB, p.zeta, p.nu))


def w_oracle(rho: QubitDensity, p: ClonerParams) -> float:
    """Same distance computed directly from the 4x4 matrices."""
    target = linmath.tensor(rho.check_psd().matrix(), rho.matrix())
    return hs_dist_sq(target, joint_output(rho, p))
