"""Ensemble averages of the cloning distance.

Two state ensembles are supported:

``pure``
    two-qubit pure states parametrized by three polar angles in [0, pi/2] and
    three phases in [0, 2 pi), weighted by ``sin(t1)^2 sin(t2) / pi^5``;
``mixed``
    one-qubit density matrices distributed uniformly over the Bloch ball,
    weighted by ``3 r^2 sin(theta) / (4 pi)``.

Each average can be computed by deterministic Monte Carlo or by a
Gauss-Legendre product rule. Internally every scheme is turned into a list of
node chunks carrying ``(A, <|B|^2>, <|B|^4>, weight)``; the distance is
polynomial in ``|B|^2`` so that phases can be averaged out analytically.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .errors import UsageError
from .qcm import ClonerParams, w_moments
from .qstate import Amplitudes2Q

MONTE_CARLO = "monte-carlo"
QUADRATURE = "quadrature"
ENSEMBLES = ("pure", "mixed")
MC_CHUNK = 1 << 16

_HALF_PI = 0.5 * math.pi
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PureParam:
    theta1: float
    theta2: float
    theta3: float
    gamma1: float = 0.0
    gamma2: float = 0.0
    gamma3: float = 0.0

    def __post_init__(self):
        for name in ("theta1", "theta2", "theta3"):
            v = getattr(self, name)
            if not 0.0 <= v <= _HALF_PI:
                raise UsageError(f"{name} must lie in [0, pi/2], got {v!r}")
        for name in ("gamma1", "gamma2", "gamma3"):
            v = getattr(self, name)
            if not 0.0 <= v <= _TWO_PI:
                raise UsageError(f"{name} must lie in [0, 2 pi], got {v!r}")


@dataclass(frozen=True)
class AveragingScheme:
    """How to evaluate an ensemble average.

    ``reduced`` selects the cheaper equivalent form of the quadrature: phases
    of the pure ensemble are averaged analytically (6 -> 3 dimensions) and the
    azimuth of the mixed ensemble is integrated exactly (3 -> 2). ``workers``
    only affects wall time, never the result.
    """

    method: Literal["monte-carlo", "quadrature"] = QUADRATURE
    samples: int = 1_000_000
    points_per_axis: int = 12
    seed: int = 42
    reduced: bool = True
    workers: int = field(default=1, compare=False)

    def __post_init__(self):
        if self.method not in (MONTE_CARLO, QUADRATURE):
            raise UsageError(f"unknown averaging method {self.method!r}")
        if self.samples < 1:
            raise UsageError(f"samples must be >= 1, got {self.samples}")
        if self.points_per_axis < 2:
            raise UsageError(f"points_per_axis must be >= 2, got {self.points_per_axis}")
        if not 0 <= self.seed < 2**64:
            raise UsageError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.workers < 1:
            raise UsageError(f"workers must be >= 1, got {self.workers}")

    @classmethod
    def quadrature(cls, points_per_axis: int = 12, reduced: bool = True, workers: int = 1):
        return cls(QUADRATURE, points_per_axis=points_per_axis, reduced=reduced, workers=workers)

    @classmethod
    def monte_carlo(cls, samples: int = 1_000_000, seed: int = 42, workers: int = 1):
        return cls(MONTE_CARLO, samples=samples, seed=seed, workers=workers)

    @property
    def is_monte_carlo(self) -> bool:
        return self.method == MONTE_CARLO


@dataclass(frozen=True)
class ObjectiveEstimate:
    value: float
    std_error: float
    evaluations: int
    ensemble: str


# -- parametrizations -------------------------------------------------------


def _pure_amplitudes(t1, t2, t3, g1, g2, g3):
    s1 = np.sin(t1)
    s12 = s1 * np.sin(t2)
    a00 = np.cos(t1) + 0j
    a01 = np.exp(1j * g1) * s1 * np.cos(t2)
    a10 = np.exp(1j * g2) * s12 * np.cos(t3)
    a11 = np.exp(1j * g3) * s12 * np.sin(t3)
    return a00, a01, a10, a11


def pure_param_to_state(q: PureParam) -> Amplitudes2Q:
    amps = _pure_amplitudes(q.theta1, q.theta2, q.theta3, q.gamma1, q.gamma2, q.gamma3)
    return Amplitudes2Q(*(complex(a) for a in amps))


def _reduce_amplitudes(a00, a01, a10, a11):
    A = np.abs(a00) ** 2 + np.abs(a01) ** 2
    B = a00 * np.conj(a10) + a01 * np.conj(a11)
    return A, np.abs(B) ** 2


# -- node construction -------------------------------------------------------


def _gl(n: int, lo: float, hi: float):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return half * x + 0.5 * (hi + lo), half * w


def _nodes(a, b2, b4, w):
    return (np.ravel(a), np.ravel(b2), np.ravel(b4), np.ravel(w))


def _pure_quad_reduced(n: int):
    t, wt = _gl(n, 0.0, _HALF_PI)
    t1, t2, t3 = np.meshgrid(t, t, t, indexing="ij")
    w = wt[:, None, None] * wt[None, :, None] * wt[None, None, :]
    s1, c1 = np.sin(t1), np.cos(t1)
    s2, c2 = np.sin(t2), np.cos(t2)
    A = c1**2 + s1**2 * c2**2
    # |B|^2 = x^2 + y^2 + 2 x y cos(g1 + g2 - g3); phase-averaged moments below
    x = c1 * s1 * s2 * np.cos(t3)
    y = s1**2 * c2 * s2 * np.sin(t3)
    b2 = x**2 + y**2
    b4 = b2**2 + 2.0 * (x * y) ** 2
    w = w * s1**2 * s2 * _TWO_PI**3 / math.pi**5
    return [_nodes(A, b2, b4, w)]


def _pure_quad_direct(n: int):
    t, wt = _gl(n, 0.0, _HALF_PI)
    g, wg = _gl(n, 0.0, _TWO_PI)
    T2, T3, G1, G2, G3 = np.meshgrid(t, t, g, g, g, indexing="ij")
    chunks = []
    # one chunk per theta1 node keeps peak memory at n^5 points
    for t1, w1 in zip(t, wt):
        W = (
            w1
            * wt[:, None, None, None, None]
            * wt[None, :, None, None, None]
            * wg[None, None, :, None, None]
            * wg[None, None, None, :, None]
            * wg[None, None, None, None, :]
        )
        A, b2 = _reduce_amplitudes(*_pure_amplitudes(t1, T2, T3, G1, G2, G3))
        W = W * math.sin(t1) ** 2 * np.sin(T2) / math.pi**5
        chunks.append(_nodes(A, b2, b2**2, W))
    return chunks


def _mixed_quad(n: int, reduced: bool):
    r, wr = _gl(n, 0.0, 1.0)
    th, wth = _gl(n, 0.0, math.pi)
    if reduced:
        R, TH = np.meshgrid(r, th, indexing="ij")
        w = wr[:, None] * wth[None, :] * _TWO_PI
        A = 0.5 * (1.0 + R * np.cos(TH))
        b2 = (0.5 * R * np.sin(TH)) ** 2
    else:
        ph, wph = _gl(n, 0.0, _TWO_PI)
        R, TH, PH = np.meshgrid(r, th, ph, indexing="ij")
        w = wr[:, None, None] * wth[None, :, None] * wph[None, None, :]
        A = 0.5 * (1.0 + R * np.cos(TH))
        B = 0.5 * R * np.sin(TH) * np.exp(-1j * PH)
        b2 = np.abs(B) ** 2
    w = w * 3.0 / (4.0 * math.pi) * R**2 * np.sin(TH)
    return [_nodes(A, b2, b2**2, w)]


def _mc_rng(seed: int, chunk: int) -> np.random.Generator:
    # chunk index mixed into the seed: chunk c draws the same numbers however it is scheduled
    return np.random.default_rng([seed, chunk])


def _chunk_sizes(samples: int):
    full, rest = divmod(samples, MC_CHUNK)
    return [MC_CHUNK] * full + ([rest] if rest else [])


def _pure_mc(samples: int, seed: int):
    chunks = []
    for c, n in enumerate(_chunk_sizes(samples)):
        u = _mc_rng(seed, c).random((6, n))
        t1, t2, t3 = _HALF_PI * u[:3]
        g1, g2, g3 = _TWO_PI * u[3:]
        A, b2 = _reduce_amplitudes(*_pure_amplitudes(t1, t2, t3, g1, g2, g3))
        # box volume pi^6 over the normalizer pi^5
        w = math.pi * np.sin(t1) ** 2 * np.sin(t2)
        chunks.append(_nodes(A, b2, b2**2, w))
    return chunks


def _mixed_mc(samples: int, seed: int):
    chunks = []
    for c, n in enumerate(_chunk_sizes(samples)):
        u = _mc_rng(seed, c).random((3, n))
        r, th, ph = u[0], math.pi * u[1], _TWO_PI * u[2]
        A = 0.5 * (1.0 + r * np.cos(th))
        b2 = np.abs(0.5 * r * np.sin(th) * np.exp(-1j * ph)) ** 2
        # box volume 2 pi^2 times the normalizer 3 / (4 pi)
        w = 1.5 * math.pi * r**2 * np.sin(th)
        chunks.append(_nodes(A, b2, b2**2, w))
    return chunks


@functools.lru_cache(maxsize=16)
def _node_chunks(ensemble: str, method: str, samples: int, points: int, seed: int, reduced: bool):
    if method == MONTE_CARLO:
        return _pure_mc(samples, seed) if ensemble == "pure" else _mixed_mc(samples, seed)
    if ensemble == "pure":
        return _pure_quad_reduced(points) if reduced else _pure_quad_direct(points)
    return _mixed_quad(points, reduced)


def node_chunks(ensemble: str, s: AveragingScheme):
    """Cached node chunks ``[(A, <|B|^2>, <|B|^4>, weight), ...]`` for a scheme."""
    if ensemble not in ENSEMBLES:
        raise UsageError(f"ensemble must be one of {ENSEMBLES}, got {ensemble!r}")
    if s.is_monte_carlo:
        return _node_chunks(ensemble, s.method, s.samples, 0, s.seed, False)
    return _node_chunks(ensemble, s.method, 0, s.points_per_axis, 0, s.reduced)


# -- averaging ---------------------------------------------------------------


Integrand = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


def average(ensemble: str, s: AveragingScheme, integrand: Integrand) -> ObjectiveEstimate:
    """Average ``integrand(A, <|B|^2>, <|B|^4>)`` over an ensemble.

    Chunk partial sums are reduced in chunk order, so the result does not
    depend on ``s.workers``.
    """
    chunks = node_chunks(ensemble, s)

    def partial(chunk):
        A, b2, b4, w = chunk
        f = w * integrand(A, b2, b4)
        return float(np.sum(f)), float(np.sum(f * f)), f.size

    if s.workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=s.workers) as pool:
            parts = list(pool.map(partial, chunks))
    else:
        parts = [partial(c) for c in chunks]

    total = sum(p[0] for p in parts)
    n = sum(p[2] for p in parts)
    if not s.is_monte_carlo:
        return ObjectiveEstimate(total, 0.0, n, ensemble)
    mean = total / n
    if n > 1:
        sq = sum(p[1] for p in parts)
        var = max(sq / n - mean * mean, 0.0) * n / (n - 1)
        se = math.sqrt(var / n)
    else:
        se = 0.0
    return ObjectiveEstimate(mean, se, n, ensemble)


def _objective(ensemble: str, p: ClonerParams, s: AveragingScheme) -> ObjectiveEstimate:
    return average(ensemble, s, lambda A, b2, b4: w_moments(A, b2, b4, p.zeta, p.nu))


def g_pure(p: ClonerParams, s: AveragingScheme | None = None) -> ObjectiveEstimate:
    """Distance averaged over the pure two-qubit ensemble."""
    return _objective("pure", p, s or AveragingScheme())


def g_mixed(p: ClonerParams, s: AveragingScheme | None = None) -> ObjectiveEstimate:
    """Distance averaged uniformly over the Bloch ball."""
    return _objective("mixed", p, s or AveragingScheme())


def objective(ensemble: str) -> Callable[[ClonerParams, AveragingScheme], ObjectiveEstimate]:
    if ensemble == "pure":
        return g_pure
    if ensemble == "mixed":
        return g_mixed
    raise UsageError(f"ensemble must be one of {ENSEMBLES}, got {ensemble!r}")


def measure_selfcheck(ensemble: str, s: AveragingScheme | None = None) -> float:
    """Average of the constant 1; equals 1 when the ensemble measure is normalized."""
    return average(ensemble, s or AveragingScheme(), lambda A, b2, b4: np.ones_like(A)).value

