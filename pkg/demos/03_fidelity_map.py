#!/usr/bin/env python3
"""Fidelity of a single clone over the real slice of the Bloch ball.

Writes the CSV produced by ``partial-qcm fidelity-map`` and, if matplotlib is
installed, a contour plot next to it.
"""

import sys
from pathlib import Path

import numpy as np

from partial_qcm import ClonerParams
from partial_qcm.cli import FIVE_SIXTHS, fidelity_grid, format_fidelity_csv, fraction_above


def main(outdir="."):
    outdir = Path(outdir)
    p = ClonerParams(0.725, 1.0)
    rows = fidelity_grid(p, 101, 91)
    (outdir / "fidelity_map.csv").write_text(format_fidelity_csv(rows))

    f = np.array([row.fidelity for row in rows]).reshape(101, 91)
    print(f"min F = {f.min():.4f} at r = 1, theta = {np.degrees(rows[int(f.argmin())].theta):.0f} deg")
    print(f"fraction of the slice with F > 5/6: {fraction_above(rows):.4f}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return

    r = np.linspace(0, 1, 101)
    theta = np.linspace(0, np.pi / 2, 91)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    c = ax.contourf(theta, r, f, 30, cmap="viridis")
    ax.contour(theta, r, f, levels=[FIVE_SIXTHS], colors="w", linewidths=1)
    ax.set_xlabel("theta [rad]")
    ax.set_ylabel("r")
    ax.set_title("single-clone fidelity, zeta=0.725, nu=1")
    fig.colorbar(c, ax=ax)
    fig.savefig(outdir / "fidelity_map.png", dpi=120, bbox_inches="tight")


if __name__ == "__main__":
    main(*sys.argv[1:])
