"""Figure rendering for the report-producing CLI paths.

Every renderer writes a PNG next to the delimited output and returns the
path; none of them show interactive windows (Agg backend).
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .poly import Assignment
from .sim import Schedule


def _bits(a: Assignment) -> str:
    return "".join(str(b) for b in a)


def save_simulation_figure(
    path: str | Path,
    schedule: Schedule,
    probabilities: Mapping[Assignment, float],
    target: Sequence[Assignment] | None = None,
) -> Path:
    """Two panels: drive waveforms over the sweep, and the final probability
    of each data assignment (target assignments highlighted)."""
    path = Path(path)
    fig, (ax_drive, ax_prob) = plt.subplots(
        2, 1, figsize=(7.2, 6.0), height_ratios=[1, 1.4]
    )
    ts = np.linspace(0.0, schedule.duration, 400)
    ax_drive.plot(ts, [schedule.omega_at(t) for t in ts], label=r"$\Omega(t)$")
    ax_drive.plot(ts, [schedule.delta_at(t) for t in ts], label=r"$\Delta(t)$")
    ax_drive.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax_drive.set_xlabel("time")
    ax_drive.set_ylabel("drive amplitude")
    ax_drive.legend(loc="best", frameon=False)

    items = sorted(probabilities.items())
    labels = [_bits(a) for a, _ in items]
    values = [p for _, p in items]
    target_set = {tuple(t) for t in target} if target else set()
    colors = ["#d95f02" if a in target_set else "#7570b3" for a, _ in items]
    xs = np.arange(len(items))
    ax_prob.bar(xs, values, color=colors)
    ax_prob.set_xticks(xs)
    ax_prob.set_xticklabels(labels, rotation=90, fontsize=7)
    ax_prob.set_ylabel("probability")
    ax_prob.set_xlabel("data assignment")
    if target_set:
        ax_prob.set_title("orange = verified ground projections", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_scaling_figure(
    path: str | Path,
    rows: Sequence[tuple[int, int, str, int]],
) -> Path:
    """Atom count vs. N on log-log axes, one line per (order, mode)."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    series: dict[tuple[int, str], list[tuple[int, int]]] = {}
    for n, k, mode, atoms in rows:
        series.setdefault((k, mode), []).append((n, atoms))
    for (k, mode), pts in sorted(series.items()):
        pts.sort()
        ax.loglog(
            [p[0] for p in pts],
            [p[1] for p in pts],
            marker="o",
            ms=3,
            label=f"K={k}, {mode}",
        )
    ax.set_xlabel("variables N")
    ax.set_ylabel("atoms")
    ax.grid(True, which="both", lw=0.3, alpha=0.5)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
