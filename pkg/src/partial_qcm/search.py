"""Derivative-free minimization of an averaged objective over (zeta, nu) in [0, 1]^2.

A coarse grid locates the basin; golden-section steps, alternating between
the two coordinates, then shrink a bracket around it. Points on the edge of
the square are evaluated explicitly, so optima on the boundary (the cloner
optimum sits at ``nu = 1``) are reported there rather than just inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .ensemble import AveragingScheme, ObjectiveEstimate, objective
from .errors import ObjectiveError, UsageError
from .qcm import ClonerParams

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

ObjectiveFn = Callable[[float, float], Union[float, ObjectiveEstimate]]


@dataclass(frozen=True)
class SearchResult:
    zeta_star: float
    nu_star: float
    g_star: float
    trace: tuple[tuple[float, float, float], ...]
    converged: bool
    message: str = ""
    std_error: float = 0.0

    @property
    def evaluations(self) -> int:
        return len(self.trace)


class _Evaluator:
    """Memoizing wrapper that records every distinct evaluation in order."""

    def __init__(self, fn: ObjectiveFn):
        self.fn = fn
        self.cache: dict[tuple[float, float], float] = {}
        self.trace: list[tuple[float, float, float]] = []
        self.std_errors: dict[tuple[float, float], float] = {}

    def __call__(self, z: float, n: float) -> float:
        key = (z, n)
        if key in self.cache:
            return self.cache[key]
        out = self.fn(z, n)
        if isinstance(out, ObjectiveEstimate):
            self.std_errors[key] = out.std_error
            value = out.value
        else:
            value = float(out)
        if not math.isfinite(value):
            raise ObjectiveError(f"objective is not finite at zeta={z!r}, nu={n!r}: {value!r}")
        self.cache[key] = value
        self.trace.append((z, n, value))
        return value


def _grid(step: float) -> list[float]:
    n = math.ceil(1.0 / step - 1e-9)
    pts = sorted({min(round(k * step, 12), 1.0) for k in range(n + 1)} | {1.0})
    return pts


def _resolve(target, scheme: AveragingScheme | None) -> ObjectiveFn:
    if callable(target):
        return target
    g = objective(target)
    s = scheme or AveragingScheme()
    return lambda z, n: g(ClonerParams(z, n), s)


def _stat_resolution(f: _Evaluator, point, axis: int, h: float) -> float:
    """Coordinate change that moves the objective by one standard error.

    Uses the curvature of a three-point quadratic fit, or the slope when the
    point lies on the boundary of the square.
    """
    se = f.std_errors.get(tuple(point), 0.0)
    if se <= 0.0:
        return 0.0

    def at(x):
        p = list(point)
        p[axis] = x
        return f(*p)

    x = point[axis]
    f0 = at(x)
    if x - h >= 0.0 and x + h <= 1.0:
        curv = (at(x - h) - 2.0 * f0 + at(x + h)) / (h * h)
        if curv > 0.0:
            return math.sqrt(2.0 * se / curv)
    nb = x - h if x - h >= 0.0 else x + h
    slope = abs(at(nb) - f0) / h
    return se / slope if slope > 0.0 else 1.0


def minimize(
    target: Union[str, ObjectiveFn],
    scheme: AveragingScheme | None = None,
    grid_step: float = 0.05,
    refine_tol: float = 0.002,
    max_iter: int = 200,
) -> SearchResult:
    """Minimize ``G(zeta, nu)`` over the unit square.

    Args:
        target: ``"pure"`` or ``"mixed"`` to minimize the corresponding
            ensemble average under ``scheme``, or any callable ``f(zeta, nu)``
            returning a float or an :class:`ObjectiveEstimate`.
        scheme: averaging scheme for the named objectives.
        grid_step: spacing of the coarse grid, in (0, 0.25].
        refine_tol: final bracket width in both coordinates, in (0, grid_step).

    Returns:
        The best evaluated point. Ties in value go to the smaller ``zeta``. With a
        Monte Carlo scheme the refinement stops once the bracket is narrower
        than the statistical resolution; ``converged`` is then False if that
        is coarser than ``refine_tol``.
    """
    if not 0.0 < grid_step <= 0.25:
        raise UsageError(f"grid_step must lie in (0, 0.25], got {grid_step!r}")
    if not 0.0 < refine_tol < grid_step:
        raise UsageError(f"refine_tol must lie in (0, grid_step), got {refine_tol!r}")

    f = _Evaluator(_resolve(target, scheme))

    grid = _grid(grid_step)
    for z in grid:
        for n in grid:
            f(z, n)
    z0, n0, _ = min(f.trace, key=lambda t: (t[2], t[0], t[1]))

    se0 = f.std_errors.get((z0, n0), 0.0)
    floors = [refine_tol, refine_tol]
    if se0 > 0.0:
        for axis in (0, 1):
            floors[axis] = max(refine_tol, _stat_resolution(f, (z0, n0), axis, grid_step))

    brackets = [
        [max(0.0, z0 - grid_step), min(1.0, z0 + grid_step)],
        [max(0.0, n0 - grid_step), min(1.0, n0 + grid_step)],
    ]
    current = [z0, n0]

    def probe(axis, x):
        p = list(current)
        p[axis] = x
        return f(*p)

    for _ in range(max_iter):
        active = [a for a in (0, 1) if brackets[a][1] - brackets[a][0] > floors[a]]
        if not active:
            break
        for axis in active:
            lo, hi = brackets[axis]
            x1 = hi - INV_PHI * (hi - lo)
            x2 = lo + INV_PHI * (hi - lo)
            f1, f2 = probe(axis, x1), probe(axis, x2)
            if f1 <= f2:
                brackets[axis][1] = x2
                current[axis] = x1
            else:
                brackets[axis][0] = x1
                current[axis] = x2

    # bracket midpoints and any touched edges of the square
    mids = [0.5 * (b[0] + b[1]) for b in brackets]
    f(*mids)
    edges_z = [x for x in (0.0, 1.0) if x in brackets[0]]
    edges_n = [x for x in (0.0, 1.0) if x in brackets[1]]
    for zc in [mids[0], current[0], *edges_z]:
        for nc in [mids[1], current[1], *edges_n]:
            f(zc, nc)

    zs, ns, gs = min(f.trace, key=lambda t: (t[2], t[0], t[1]))
    widths = [b[1] - b[0] for b in brackets]
    converged = all(w <= refine_tol for w in widths)
    message = ""
    if not converged:
        message = (
            f"refinement stopped at the statistical resolution: final bracket widths "
            f"zeta={widths[0]:.4g}, nu={widths[1]:.4g} vs refine_tol={refine_tol:g} "
            f"(objective std-error {se0:.3g})"
        )
    se = f.std_errors.get((zs, ns), 0.0)
    return SearchResult(zs, ns, gs, tuple(f.trace), converged, message, se)
