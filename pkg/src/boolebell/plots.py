"""Matplotlib rendering for the sweep and deviation reports.

Figures are written straight to files (Agg backend); the CLI calls these
when --plot PATH is passed, alongside its usual delimited output.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_sweep(rows, path) -> None:
    """Eigenvalue curves, singlet sum, and the classical bound over theta."""
    theta = [r["theta"] for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(theta, [r["mu1_closed"] for r in rows], "-", color="tab:blue",
            label=r"$\mu_1$ closed form")
    ax.plot(theta, [r["mu1_computed"] for r in rows], "o", ms=3.5,
            color="tab:blue", label=r"$\mu_1$ computed")
    ax.plot(theta, [r["mu2_closed"] for r in rows], "-", color="tab:orange",
            label=r"$\mu_2$ closed form")
    ax.plot(theta, [r["mu2_computed"] for r in rows], "s", ms=3.5,
            color="tab:orange", label=r"$\mu_2$ computed")
    ax.plot(theta, [r["singlet_sum"] for r in rows], "--", color="tab:green",
            label="singlet value")
    ax.axhline(-1.0, color="black", lw=0.8, label="classical bound")
    ax.set_xlabel(r"$\theta$ (rad)")
    ax.set_ylabel("eigenvalue / expectation")
    ax.legend(loc="lower right", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_deviation(extrema, path) -> None:
    """The classical-minus-quantum deviation curve with its extrema marked."""
    grid = np.linspace(0.0, math.pi, 1001)
    curve = -1.0 + 2.0 * grid / math.pi + np.cos(grid)
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(grid, curve, color="tab:blue")
    ax.axhline(0.0, color="black", lw=0.8)
    for t, sign in ((extrema.theta_low, 1.0), (extrema.theta_high, -1.0)):
        ax.plot([t], [sign * extrema.max_abs_deviation], "o", color="tab:red")
        ax.annotate(f"{t:.6f}", (t, sign * extrema.max_abs_deviation),
                    textcoords="offset points", xytext=(6, -4), fontsize=8)
    ax.set_xlabel(r"$\theta$ (rad)")
    ax.set_ylabel("deviation")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
