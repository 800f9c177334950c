"""Matplotlib renderings of verification and benchmark reports.

Figures are auxiliary outputs written next to the delimited report files;
the delimited outputs remain the machine-readable contract.  matplotlib is
imported lazily with the Agg backend so headless runs never touch a display.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Sequence

from .reports import VerifyReport


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def save_verify_figure(reports: List[VerifyReport], path: Path) -> Path:
    """Horizontal bar chart of residuals against tolerances, log scale."""
    plt = _pyplot()
    names = [r.identity for r in reports]
    residuals = [max(r.max_residual, 1e-18) for r in reports]
    tols = [r.tolerance for r in reports]
    colors = ["tab:green" if r.passed else "tab:red" for r in reports]
    fig, ax = plt.subplots(figsize=(8, 0.6 * len(reports) + 1.5))
    ypos = range(len(reports))
    ax.barh(list(ypos), residuals, color=colors)
    for y, tol in zip(ypos, tols):
        ax.plot([tol, tol], [y - 0.4, y + 0.4], color="black", linestyle="--", linewidth=1)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names)
    ax.set_xscale("log")
    ax.set_xlabel("max residual (dashed: tolerance)")
    ax.set_title("identity verification residuals")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_limit_figure(report: VerifyReport, path: Path) -> Path:
    """Log-log contraction error against lattice size."""
    plt = _pyplot()
    n_values = report.extras["n_values"]
    errors = report.extras["errors"]
    errors_alt = report.extras.get("errors_alternate_sign")
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.loglog(n_values, errors, "o-", label="family convention")
    if errors_alt is not None:
        ax.loglog(n_values, errors_alt, "s--", label="alternate y-sign")
    ax.set_xlabel("lattice size N")
    ax.set_ylabel("|P - C|")
    ax.set_title("Krawtchouk-to-Charlier contraction")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_bench_figure(rows: Sequence[dict], path: Path) -> Path:
    """Bar chart of per-algorithm evaluation time over the benchmark grid."""
    plt = _pyplot()
    names = [row["algorithm"] for row in rows]
    times = [row["best_seconds"] for row in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(names, times, color="tab:blue")
    ax.set_ylabel("best wall time per grid sweep [s]")
    ax.set_title("evaluator benchmark")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
