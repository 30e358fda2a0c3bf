"""Figure specification files.

A spec is strict key/value text: one ``[figure]`` section (layout, output
path, axis labels) and one ``[panel.N]`` section per panel selecting a
(t, x) pair and naming the CSVs to draw.  Relative CSV paths resolve
against the spec file's directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field


class SpecError(Exception):
    """The figure spec could not be parsed or is inconsistent."""


_FIGURE_KEYS = {"output", "rows", "cols", "x_label", "y_label", "title"}
_PANEL_KEYS = {"t", "x", "density_csv", "fk_csv", "oracle_csv", "label"}


@dataclass
class PanelSpec:
    t: float
    x: float
    density_csv: str | None = None
    fk_csv: str | None = None
    oracle_csv: str | None = None
    label: str | None = None


@dataclass
class FigureSpec:
    output: str
    rows: int
    cols: int
    panels: list[PanelSpec] = field(default_factory=list)
    x_label: str = "u"
    y_label: str = "density"
    title: str | None = None


def _parse_sections(text):
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            current = (name, {})
            sections.append((lineno, current))
            continue
        if current is None:
            raise SpecError(f"line {lineno}: key/value before any section")
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in current[1]:
            raise SpecError(f"line {lineno}: duplicate key {key!r}")
        current[1][key] = value
    if not sections:
        raise SpecError("empty figure spec")
    return sections


def parse_figure_spec(path) -> FigureSpec:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    base = os.path.dirname(os.path.abspath(path))

    figure = None
    panels = []
    for lineno, (name, kv) in _parse_sections(text):
        if name == "figure":
            if figure is not None:
                raise SpecError(f"line {lineno}: duplicate [figure] section")
            unknown = set(kv) - _FIGURE_KEYS
            if unknown:
                raise SpecError(f"[figure]: unknown keys {sorted(unknown)}")
            try:
                figure = FigureSpec(
                    output=os.path.join(base, kv["output"]),
                    rows=int(kv.get("rows", "1")),
                    cols=int(kv.get("cols", "1")),
                    x_label=kv.get("x_label", "u"),
                    y_label=kv.get("y_label", "density"),
                    title=kv.get("title"),
                )
            except KeyError as exc:
                raise SpecError(f"[figure]: missing key {exc.args[0]!r}") from None
        elif name.startswith("panel"):
            unknown = set(kv) - _PANEL_KEYS
            if unknown:
                raise SpecError(f"[{name}]: unknown keys {sorted(unknown)}")
            try:
                panel = PanelSpec(t=float(kv["t"]), x=float(kv["x"]))
            except KeyError as exc:
                raise SpecError(f"[{name}]: missing key {exc.args[0]!r}") from None
            for attr in ("density_csv", "fk_csv", "oracle_csv"):
                if attr in kv:
                    setattr(panel, attr, os.path.join(base, kv[attr]))
            panel.label = kv.get("label")
            if panel.density_csv is None and panel.fk_csv is None:
                raise SpecError(f"[{name}]: needs density_csv and/or fk_csv")
            panels.append(panel)
        else:
            raise SpecError(f"line {lineno}: unknown section [{name}]")

    if figure is None:
        raise SpecError("missing [figure] section")
    if not panels:
        raise SpecError("no [panel.*] sections")
    if figure.rows * figure.cols < len(panels):
        raise SpecError(
            f"layout {figure.rows}x{figure.cols} cannot hold {len(panels)} panels"
        )
    figure.panels = panels
    return figure
