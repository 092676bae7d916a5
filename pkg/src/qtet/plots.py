"""Static SVG emitters for the convergence and coefficient curves."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .harness import AsymptoticReport  # noqa: E402


def svg_gap_vs_r(reports: list[AsymptoticReport], path: str) -> None:
    """Log-log plot of the log-limit gap |(2pi/r) log|6j| - Vol| against r."""
    rs = [rep.r for rep in reports]
    gaps = [rep.gap for rep in reports]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.loglog(rs, gaps, "o-", color="#33547c", label="measured gap")
    ref = [gaps[0] * (math.log(r) / r) / (math.log(rs[0]) / rs[0]) for r in rs]
    ax.loglog(rs, ref, "--", color="#999999", label="log r / r")
    ax.set_xlabel("r")
    ax.set_ylabel("gap")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def svg_imc1_vs_theta(thetas, c1_values, path: str, errs=None) -> None:
    """Im C1 against the regular dihedral angle theta."""
    ims = [c.imag for c in c1_values]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    if errs is not None:
        ax.errorbar(thetas, ims, yerr=errs, fmt="o-", color="#7c3354", capsize=3)
    else:
        ax.plot(thetas, ims, "o-", color="#7c3354")
    ax.set_xlabel("theta (radians)")
    ax.set_ylabel("Im C1")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
