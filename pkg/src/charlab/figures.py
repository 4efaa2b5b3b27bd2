"""Render harness reports as figures.

One horizontal bar per check, length = instances exercised, colour = verdict.
Written next to the delimited output when the report path gets an output
directory.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .harness import Report

VERDICT_COLORS = {
    "PASS": "#2e7d32",
    "EXPECTED_FAIL": "#f9a825",
    "INFO": "#1565c0",
    "FAIL": "#c62828",
}


def render_report_figure(report: Report, path: str | Path, dpi: int = 150) -> Path:
    path = Path(path)
    checks = report.checks
    names = [c.name for c in checks]
    counts = [max(c.instances, 1) for c in checks]
    colors = [VERDICT_COLORS.get(c.verdict, "#616161") for c in checks]

    height = max(2.5, 0.38 * len(checks) + 1.2)
    fig, ax = plt.subplots(figsize=(9, height))
    ypos = range(len(checks))
    ax.barh(ypos, counts, color=colors, log=True)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("instances checked (log scale)")
    ax.set_title(f"property suite - {sum(c.instances for c in checks)} checks, "
                 f"{'all green' if report.ok() else 'violations found'}")
    for y, c in zip(ypos, checks):
        ax.text(max(c.instances, 1) * 1.1, y, c.verdict, va="center", fontsize=7)
    ax.set_xlim(right=max(counts) * math.e)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
