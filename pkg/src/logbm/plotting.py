"""Figure rendering for the command-line reports.

Everything draws through the Agg backend straight to a file, no display
required.  Figures are companions to the delimited reports, so they take the
already-computed report objects rather than recomputing geometry.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bonnesen import bonnesen_eval

_VERDICT_COLORS = {"holds": "#2a7e43", "violated": "#b3322e", "inconclusive": "#c28e0e"}


def bonnesen_figure(report, path):
    """Both Bonnesen parabolas over a window around [r_o, R_o]."""
    q = report.quermass
    lo = min(report.r_o, report.R_o)
    hi = max(report.r_o, report.R_o)
    pad = 0.25 * (hi - lo) if hi > lo else 0.25 * max(hi, 1.0)
    rs = np.linspace(max(lo - pad, 0.0), hi + pad, 400)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(rs, bonnesen_eval(q, 0, rs), label="B0", color="#1f4e9c")
    ax.plot(rs, bonnesen_eval(q, 1, rs), label="B1", color="#7a2f8f")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.axvline(report.r_o, color="gray", ls="--", lw=0.9)
    ax.axvline(report.R_o, color="gray", ls="--", lw=0.9)
    ax.annotate("r_o", (report.r_o, 0.0), textcoords="offset points", xytext=(3, 6))
    ax.annotate("R_o", (report.R_o, 0.0), textcoords="offset points", xytext=(3, 6))
    ax.set_xlabel("r")
    ax.set_ylabel("Bonnesen value")
    tag = []
    tag.append("in r1" if report.in_R1 else "not in r1")
    tag.append("in r2" if report.in_R2 else "not in r2")
    ax.set_title("Bonnesen functions (" + ", ".join(tag) + ")")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def _report_label(r):
    if not r.params:
        return r.name
    inner = ",".join(f"{k}={r.params[k]}" for k in sorted(r.params))
    return f"{r.name}({inner})"


def margins_figure(reports, path):
    """Relative margins of every check as a horizontal bar chart."""
    labels = [_report_label(r) for r in reports]
    margins = [r.margin_rel for r in reports]
    colors = [_VERDICT_COLORS.get(r.verdict, "#555555") for r in reports]
    height = max(2.5, 0.32 * len(reports) + 1.2)
    fig, ax = plt.subplots(figsize=(7.2, height))
    y = np.arange(len(reports))[::-1]
    ax.barh(y, margins, color=colors)
    ax.set_yticks(y)
    ax.set_yticklabels(labels, fontsize=8)
    ax.axvline(0.0, color="black", lw=0.8)
    ax.set_xlabel("relative margin (nonnegative = holds)")
    ax.set_title("Inequality margins")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def curve_figure(samples, path, xlabel="t", ylabel="value", title="curve"):
    """Plain line plot of (x, y) samples."""
    xs = [s[0] for s in samples]
    ys = [s[1] for s in samples]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(xs, ys, marker="o", ms=3, color="#1f4e9c")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def search_figure(counts, path):
    """Verdict counts from a randomized search run."""
    keys = sorted(counts)
    vals = [counts[k] for k in keys]
    colors = [_VERDICT_COLORS.get(k, "#555555") for k in keys]
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    ax.bar(range(len(keys)), vals, color=colors, tick_label=keys)
    for i, v in enumerate(vals):
        ax.annotate(str(v), (i, v), ha="center", textcoords="offset points", xytext=(0, 3))
    ax.set_ylabel("checks")
    ax.set_title("Search verdicts")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
