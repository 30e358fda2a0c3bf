"""Render multi-panel density figures from spde-density CSV files.

Pure post-processing: every plotted number is read from a CSV; nothing is
recomputed.  Output is raster PNG at a fixed size and DPI with pinned
metadata, so re-rendering identical inputs yields identical bytes.
"""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .figspec import FigureSpec, PanelSpec

DPI = 120
PANEL_SIZE = (4.0, 3.2)  # inches per panel
PNG_METADATA = {"Software": "plot-figures"}


class MissingSeries(Exception):
    """A requested (t, x) series is absent from the named CSV."""


def _read_rows(path, t, x, required):
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not set(required) <= set(reader.fieldnames):
                raise MissingSeries(f"{path}: missing columns {required}")
            rows = [
                row for row in reader
                if float(row["t"]) == t and float(row["x"]) == x
            ]
    except OSError as exc:
        raise MissingSeries(f"cannot read {path}: {exc}") from None
    if not rows:
        raise MissingSeries(f"{path}: no rows with t = {t}, x = {x}")
    return rows


def _sorted_columns(rows, *names):
    cols = [np.array([float(r[name]) for r in rows]) for name in names]
    order = np.argsort(cols[0], kind="stable")
    return [c[order] for c in cols]


def _draw_panel(ax, panel: PanelSpec, spec: FigureSpec):
    if panel.density_csv is not None:
        rows = _read_rows(panel.density_csv, panel.t, panel.x, ("u", "t", "x", "p_closed"))
        u, p = _sorted_columns(rows, "u", "p_closed")
        ax.plot(u, p, "-", color="#1f5fa0", lw=1.6, label="closed form")
    if panel.fk_csv is not None:
        rows = _read_rows(
            panel.fk_csv, panel.t, panel.x, ("u", "t", "x", "p_fk", "stderr")
        )
        u, p_fk, stderr = _sorted_columns(rows, "u", "p_fk", "stderr")
        ax.errorbar(
            u, p_fk, yerr=3.0 * stderr, fmt="o", ms=3.0, lw=0.9, capsize=2.0,
            color="#c44e52", label="estimate (+/- 3 s.e.)",
        )
    if panel.oracle_csv is not None:
        rows = _read_rows(
            panel.oracle_csv, panel.t, panel.x, ("t", "x", "ks", "mean_emp")
        )
        mean_emp = float(rows[0]["mean_emp"])
        ks = float(rows[0]["ks"])
        ax.axvline(mean_emp, color="#55a868", ls="--", lw=1.1,
                   label=f"sample mean (KS {ks:.4f})")
    ax.set_title(panel.label or f"t = {panel.t:g}, x = {panel.x:g}", fontsize=10)
    ax.set_xlabel(spec.x_label, fontsize=9)
    ax.set_ylabel(spec.y_label, fontsize=9)
    ax.tick_params(labelsize=8)
    ax.grid(alpha=0.25, lw=0.5)


def build_figure(spec: FigureSpec):
    """Assemble the matplotlib figure; returns (figure, flat axes list)."""
    fig, axes = plt.subplots(
        spec.rows,
        spec.cols,
        figsize=(PANEL_SIZE[0] * spec.cols, PANEL_SIZE[1] * spec.rows),
        dpi=DPI,
        squeeze=False,
    )
    flat = axes.ravel().tolist()
    for panel, ax in zip(spec.panels, flat):
        _draw_panel(ax, panel, spec)
    for ax in flat[len(spec.panels):]:
        ax.set_axis_off()
    flat[0].legend(fontsize=8, loc="best")
    if spec.title:
        fig.suptitle(spec.title, fontsize=11)
    fig.tight_layout()
    return fig, flat[: len(spec.panels)]


def render(spec: FigureSpec) -> str:
    """Write the figure PNG and return its path."""
    fig, _ = build_figure(spec)
    try:
        fig.savefig(spec.output, format="png", metadata=dict(PNG_METADATA))
    finally:
        plt.close(fig)
    return spec.output
