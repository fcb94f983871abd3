"""Randomized consistency checks between the closed forms and brute-force constructions.

Each check draws its own cases from a generator seeded with ``(seed, index)``
and stops at the first failing case, which is reported with its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from scipy.stats import unitary_group

from . import ensemble, linmath, qcm, qstate

LEVELS = {"quick": 100, "full": 10_000}


@dataclass(frozen=True)
class CheckResult:
    name: str
    cases: int
    passed: bool
    failure: str = ""


def random_amplitudes(rng: np.random.Generator) -> qstate.Amplitudes2Q:
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return qstate.Amplitudes2Q.from_vector(v / np.linalg.norm(v)).canonical()


def random_density(rng: np.random.Generator) -> qstate.QubitDensity:
    return qstate.reduce_first(random_amplitudes(rng))


def random_params(rng: np.random.Generator) -> qcm.ClonerParams:
    z, n = rng.random(2)
    return qcm.ClonerParams(float(z), float(n))


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(2, random_state=rng)


def brute_joint_output(psi: qstate.Amplitudes2Q, p: qcm.ClonerParams) -> np.ndarray:
    """Clone pair state from tracing H3 and H4 out of the full 32-dimensional output."""
    xi = qcm.apply_qcm(psi, qcm.build_ancilla_frame(p))
    return linmath.partial_trace(np.outer(xi, xi.conj()), qcm.XI_DIMS, keep=[0, 1])


def _maxabs(m) -> float:
    return float(np.max(np.abs(m)))


# Each case function returns None on success or a description of the failure.
Case = Callable[[np.random.Generator], "str | None"]


def _frame_constraints(rng):
    p = random_params(rng)
    frame = qcm.build_ancilla_frame(p)
    res = frame.constraint_residuals(p)
    worst = max(res, key=res.get)
    if res[worst] > 1e-12 or frame.unitarity_residual() > 1e-12:
        return f"{p}: {worst} off by {res[worst]:.3e}"
    return None


def _norm_preservation(rng):
    psi, p = random_amplitudes(rng), random_params(rng)
    xi = qcm.apply_qcm(psi, qcm.build_ancilla_frame(p))
    err = abs(np.vdot(xi, xi).real - 1.0)
    return f"{psi}, {p}: |<Xi|Xi> - 1| = {err:.3e}" if err > 1e-12 else None


def _w_closed_vs_oracle(rng):
    rho, p = random_density(rng), random_params(rng)
    err = abs(qcm.w_closed(p, rho.A, abs(rho.B)) - qcm.w_oracle(rho, p))
    return f"{rho}, {p}: |w_closed - w_oracle| = {err:.3e}" if err > 1e-9 else None


def _joint_vs_brute(rng):
    psi, p = random_amplitudes(rng), random_params(rng)
    err = _maxabs(brute_joint_output(psi, p) - qcm.joint_output(qstate.reduce_first(psi), p))
    return f"{psi}, {p}: max entry error {err:.3e}" if err > 1e-12 else None


def _trace_consistency(rng):
    rho, p = random_density(rng), random_params(rng)
    marginal = linmath.partial_trace(qcm.joint_output(rho, p), (2, 2), keep=[0])
    err = _maxabs(marginal - qcm.single_output(rho, p).matrix())
    return f"{rho}, {p}: max entry error {err:.3e}" if err > 1e-12 else None


def _output_symmetry(rng):
    rho, p = random_density(rng), random_params(rng)
    out = qcm.joint_output(rho, p)
    swap_err = _maxabs(qcm.SWAP @ out @ qcm.SWAP - out)
    anti = abs(np.vdot(qcm.PHI4, out @ qcm.PHI4))
    if max(swap_err, anti) > 1e-12:
        return f"{rho}, {p}: swap error {swap_err:.3e}, antisymmetric weight {anti:.3e}"
    return None


def _purification_invariance(rng):
    rho, p, v = random_density(rng), random_params(rng), random_unitary(rng)
    a = brute_joint_output(qstate.purify(rho), p)
    b = brute_joint_output(qstate.alt_purify(rho, v), p)
    err = _maxabs(a - b)
    return f"{rho}, {p}, v={v.tolist()}: max entry error {err:.3e}" if err > 1e-10 else None


def _fidelity_forms(rng):
    r1, r2 = random_density(rng), random_density(rng)
    err = abs(qstate.fidelity(r1, r2) - qstate.fidelity_definitional(r1, r2))
    return f"{r1}, {r2}: closed form off by {err:.3e}" if err > 1e-10 else None


CASE_CHECKS: list[tuple[str, Case]] = [
    ("frame-constraints", _frame_constraints),
    ("norm-preservation", _norm_preservation),
    ("w-closed-vs-oracle", _w_closed_vs_oracle),
    ("joint-output-vs-brute-force", _joint_vs_brute),
    ("trace-consistency", _trace_consistency),
    ("output-symmetry", _output_symmetry),
    ("purification-invariance", _purification_invariance),
    ("fidelity-closed-vs-definitional", _fidelity_forms),
]


def _run_cases(name: str, case: Case, n: int, rng: np.random.Generator) -> CheckResult:
    for i in range(n):
        msg = case(rng)
        if msg is not None:
            return CheckResult(name, i + 1, False, f"case {i}: {msg}")
    return CheckResult(name, n, True)


def _measure_normalization() -> CheckResult:
    s = ensemble.AveragingScheme.quadrature(12)
    for ens in ensemble.ENSEMBLES:
        value = ensemble.measure_selfcheck(ens, s)
        if abs(value - 1.0) > 1e-8:
            return CheckResult("measure-normalization", 2, False, f"{ens}: measure integrates to {value!r}")
    return CheckResult("measure-normalization", 2, True)


def run_checks(level: str = "quick", seed: int = 42) -> Iterator[CheckResult]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {sorted(LEVELS)}, got {level!r}")
    n = LEVELS[level]
    for index, (name, case) in enumerate(CASE_CHECKS):
        yield _run_cases(name, case, n, np.random.default_rng([seed, index]))
    yield _measure_normalization()
