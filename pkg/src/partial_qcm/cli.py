"""Command-line interface.

    partial-qcm clone --amplitudes 1,0,0,0 --zeta 1 --nu 1
    partial-qcm clone --bloch 1,1.5707963267948966,0 --zeta 0.725
    partial-qcm optimize --ensemble pure --method quad
    partial-qcm fidelity-map --zeta 0.725 --nu 1 --grid 101x91 --out fig1.csv
    partial-qcm verify --level quick

Exit codes: 0 success, 1 verification failure, 2 usage, 3 domain, 4 I/O.
Every command accepts ``--config FILE`` with ``key=value`` lines (``#``
comments); explicit flags take precedence over the file.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import qcm, qstate, verify
from .ensemble import AveragingScheme
from .errors import DomainError, ObjectiveError, UsageError
from .search import minimize

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

FIVE_SIXTHS = 5.0 / 6.0


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- library-level helpers used by the commands ------------------------------


@dataclass(frozen=True)
class FidelityGridRow:
    r: float
    theta: float
    fidelity: float


def fidelity_grid(p: qcm.ClonerParams, r_points: int = 101, theta_points: int = 91) -> list[FidelityGridRow]:
    """Fidelity between input and single clone on the real slice of the Bloch ball.

    ``r`` runs over [0, 1] (outer loop) and ``theta`` over [0, pi/2] (inner
    loop), both uniform and inclusive, with ``phi = 0``.
    """
    if r_points < 2 or theta_points < 2:
        raise UsageError("grid sizes must be at least 2")
    rows = []
    for i in range(r_points):
        r = i / (r_points - 1)
        for j in range(theta_points):
            theta = 0.5 * math.pi * j / (theta_points - 1)
            rho = qstate.bloch_to_density(qstate.BlochPoint(r, theta, 0.0))
            f = qstate.fidelity(rho, qcm.single_output(rho, p))
            rows.append(FidelityGridRow(r, theta, f))
    return rows


def format_fidelity_csv(rows: Sequence[FidelityGridRow]) -> str:
    lines = ["r,theta,fidelity"]
    lines += [f"{row.r:.9g},{row.theta:.9g},{row.fidelity:.9g}" for row in rows]
    return "\n".join(lines) + "\n"


def fraction_above(rows: Sequence[FidelityGridRow], threshold: float = FIVE_SIXTHS) -> float:
    return sum(row.fidelity > threshold for row in rows) / len(rows)


# -- parsing -----------------------------------------------------------------


def _fmt_complex(z: complex) -> str:
    im = repr(z.imag)
    sign = "" if im.startswith("-") else "+"
    return f"{z.real!r}{sign}{im}j"


def _parse_floats(text: str, n: int, what: str) -> list[float]:
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != n:
        raise CLIError(f"{what} needs {n} comma-separated values, got {len(parts)}", EXIT_USAGE)
    try:
        return [float(t) for t in parts]
    except ValueError as exc:
        raise CLIError(f"malformed {what}: {exc}", EXIT_USAGE) from None


def _parse_amplitudes(text: str) -> qstate.Amplitudes2Q:
    parts = [t.strip().replace(" ", "") for t in text.split(",")]
    if len(parts) != 4:
        raise CLIError(f"--amplitudes needs 4 comma-separated values, got {len(parts)}", EXIT_USAGE)
    try:
        psi = qstate.Amplitudes2Q(*(complex(t) for t in parts))
    except ValueError as exc:
        raise CLIError(f"malformed amplitude: {exc}", EXIT_USAGE) from None
    if not psi.is_normalized():
        raise CLIError(f"amplitudes are not normalized (norm^2 = {psi.norm_sq()!r})", EXIT_USAGE)
    return psi.canonical()


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        r, t = text.lower().split("x")
        return int(r), int(t)
    except ValueError:
        raise CLIError(f"--grid must look like RxT, got {text!r}", EXIT_USAGE) from None


def read_config(path: str | Path) -> dict[str, str]:
    """Read ``key=value`` lines; blank lines and ``#`` comments are ignored."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read config {path}: {exc}", EXIT_IO) from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CLIError(f"{path}:{lineno}: expected key=value", EXIT_USAGE)
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def write_key_values(path: str | Path, values: dict[str, object]) -> None:
    text = "".join(f"{k}={v}\n" for k, v in values.items())
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc}", EXIT_IO) from None


def _scheme(args) -> AveragingScheme:
    if args.method == "quad":
        if args.samples is not None:
            raise CLIError("--samples only applies to --method mc", EXIT_USAGE)
        return AveragingScheme.quadrature(args.points_per_axis or 12, workers=args.workers)
    if args.points_per_axis is not None:
        raise CLIError("--points-per-axis only applies to --method quad", EXIT_USAGE)
    samples = args.samples if args.samples is not None else 1_000_000
    return AveragingScheme.monte_carlo(samples, args.seed, workers=args.workers)


def _params(args) -> qcm.ClonerParams:
    try:
        return qcm.ClonerParams(args.zeta, args.nu)
    except UsageError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None


# -- commands ----------------------------------------------------------------


def cmd_clone(args, out) -> int:
    if (args.amplitudes is None) == (args.bloch is None):
        raise CLIError("give exactly one of --amplitudes or --bloch", EXIT_USAGE)
    p = _params(args)
    if args.amplitudes is not None:
        psi = _parse_amplitudes(args.amplitudes)
        rho = qstate.reduce_first(psi)
        print(f"input amplitudes: {', '.join(_fmt_complex(complex(a)) for a in psi.vector())}", file=out)
    else:
        r, theta, phi = _parse_floats(args.bloch, 3, "--bloch")
        if r < 0.0:
            raise CLIError(f"Bloch radius must be nonnegative, got {r!r}", EXIT_USAGE)
        if r > 1.0:
            raise DomainError(f"Bloch radius {r!r} > 1: state is not PSD")
        rho = qstate.bloch_to_density(qstate.BlochPoint(r, theta, phi))
    rho.check_psd()

    joint = qcm.joint_output(rho, p)
    single = qcm.single_output(rho, p)
    print(f"zeta: {p.zeta!r}", file=out)
    print(f"nu: {p.nu!r}", file=out)
    print(f"rho_init: A={rho.A!r} B={_fmt_complex(rho.B)}", file=out)
    print("rho_out_12:", file=out)
    for row in joint:
        print("  " + "  ".join(_fmt_complex(complex(x)) for x in row), file=out)
    print(f"rho_out_1: A={single.A!r} B={_fmt_complex(single.B)}", file=out)
    print(f"fidelity: {qstate.fidelity(rho, single)!r}", file=out)
    print(f"W: {qcm.w_closed(p, rho.A, abs(rho.B))!r}", file=out)
    return EXIT_OK


def cmd_optimize(args, out) -> int:
    if args.ensemble is None:
        raise CLIError("--ensemble is required (pure or mixed)", EXIT_USAGE)
    scheme = _scheme(args)
    try:
        res = minimize(args.ensemble, scheme, args.grid_step, args.refine_tol)
    except UsageError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None
    except ObjectiveError as exc:
        raise CLIError(str(exc), EXIT_DOMAIN) from None
    if scheme.is_monte_carlo:
        method = f"monte-carlo (samples={scheme.samples}, seed={scheme.seed})"
    else:
        method = f"quadrature (points_per_axis={scheme.points_per_axis})"
    report = {
        "ensemble": args.ensemble,
        "method": method,
        "zeta_star": repr(res.zeta_star),
        "nu_star": repr(res.nu_star),
        "g_star": repr(res.g_star),
        "std_error": repr(res.std_error),
        "evaluations": res.evaluations,
        "converged": str(res.converged).lower(),
    }
    for k, v in report.items():
        print(f"{k}: {v}", file=out)
    if res.message:
        print(f"note: {res.message}", file=out)
    if args.out:
        write_key_values(args.out, report)
    return EXIT_OK


def cmd_fidelity_map(args, out) -> int:
    p = _params(args)
    r_points, t_points = _parse_grid(args.grid)
    try:
        rows = fidelity_grid(p, r_points, t_points)
    except UsageError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(format_fidelity_csv(rows))
    except OSError as exc:
        raise CLIError(f"cannot write {args.out}: {exc}", EXIT_IO) from None
    frac = fraction_above(rows)
    print(f"wrote {len(rows)} rows to {args.out}; fraction with F > 5/6: {frac:.4f}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    results = []
    print(f"{'check':<34}{'cases':>7}  result", file=out)
    for res in verify.run_checks(args.level, args.seed):
        results.append(res)
        print(f"{res.name:<34}{res.cases:>7}  {'PASS' if res.passed else 'FAIL'}", file=out)
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"first failure: {failed[0].name}: {failed[0].failure}", file=out)
        return EXIT_VERIFY
    print("all checks passed", file=out)
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partial-qcm", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.subcommands = sub.choices

    p = sub.add_parser("clone", parents=[common], help="apply the cloner to one state")
    p.add_argument("--amplitudes", help="a00,a01,a10,a11 as re+imj values")
    p.add_argument("--bloch", help="r,theta,phi (radians)")
    p.add_argument("--zeta", type=float, default=0.725)
    p.add_argument("--nu", type=float, default=1.0)
    p.set_defaults(func=cmd_clone)

    p = sub.add_parser("optimize", parents=[common], help="minimize an averaged distance")
    p.add_argument("--ensemble", choices=("pure", "mixed"))
    p.add_argument("--method", choices=("quad", "mc"), default="quad")
    p.add_argument("--samples", type=int)
    p.add_argument("--points-per-axis", type=int)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--grid-step", type=float, default=0.05)
    p.add_argument("--refine-tol", type=float, default=0.002)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write a key=value result file")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("fidelity-map", parents=[common], help="fidelity on the real Bloch slice as CSV")
    p.add_argument("--zeta", type=float, default=0.725)
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--grid", default="101x91", help="RxT grid size")
    p.add_argument("--out", default="fidelity_map.csv")
    p.set_defaults(func=cmd_fidelity_map)

    p = sub.add_parser("verify", parents=[common], help="run the consistency checks")
    p.add_argument("--level", choices=sorted(verify.LEVELS), default="quick")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify)
    return parser


def _parse(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    # re-parse with the file's values installed as subcommand defaults
    config = read_config(args.config)
    subparser = parser.subcommands[args.command]
    known = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, value in config.items():
        action = known.get(key)
        if action is None or key in ("config", "help"):
            raise CLIError(f"unknown config key {key!r} for {args.command}", EXIT_USAGE)
        try:
            defaults[key] = action.type(value) if action.type else value
        except ValueError:
            raise CLIError(f"bad value for {key}: {value!r}", EXIT_USAGE) from None
        if action.choices is not None and defaults[key] not in action.choices:
            raise CLIError(f"bad value for {key}: {value!r}", EXIT_USAGE)
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = _parse(parser, sys.argv[1:] if argv is None else list(argv))
        return args.func(args, out)
    except SystemExit as exc:
        return int(exc.code or 0)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
