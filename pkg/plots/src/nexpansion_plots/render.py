"""Render dimension-sweep CSV files to static figures.

This package is a pure consumer of the sweep CSV contract: the header must
be exactly ``family,N,param,lower,upper,estimate,method,tolerance,
valid_lower,valid_upper``; it recomputes nothing.  One curve is drawn per
non-empty column among lower/upper/estimate, rows with a false validity
flag are drawn in a visually distinct (dotted, faded) style, and sweeps of
the large-digit family get a horizontal reference line at 1/2.

Rendering is deterministic: the SVG hash salt is pinned and no timestamps
are embedded in either output format.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "nexpansion-plots"

import matplotlib.pyplot as plt

EXPECTED_HEADER = [
    "family",
    "N",
    "param",
    "lower",
    "upper",
    "estimate",
    "method",
    "tolerance",
    "valid_lower",
    "valid_upper",
]

_CURVES = (
    ("lower", "valid_lower", "tab:blue", "lower bound"),
    ("upper", "valid_upper", "tab:red", "upper bound"),
    ("estimate", None, "tab:green", "estimate"),
)


class SchemaMismatchError(ValueError):
    """The CSV does not match the sweep schema."""


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    param: float
    lower: float | None
    upper: float | None
    estimate: float | None
    method: str
    tolerance: float | None
    valid_lower: bool | None
    valid_upper: bool | None


@dataclass(frozen=True)
class PlotSpec:
    input_csv: Path
    output_image: Path
    title: str = ""
    x_label: str = "parameter"
    y_label: str = "dimension"
    log_x: bool = False
    family: str = field(default="", compare=False)


def _parse_float(cell: str, where: str) -> float | None:
    if cell == "":
        return None
    try:
        return float(cell)
    except ValueError as exc:
        raise SchemaMismatchError(f"non-numeric value {cell!r} in column {where}") from exc


def _parse_bool(cell: str, where: str) -> bool | None:
    if cell == "":
        return None
    if cell == "true":
        return True
    if cell == "false":
        return False
    raise SchemaMismatchError(f"expected true/false/empty in column {where}, got {cell!r}")


def load_sweep(path: Path) -> list[SweepRow]:
    """Parse and validate a sweep CSV; raises SchemaMismatchError."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatchError(f"{path}: empty file, expected a header row")
        if header != EXPECTED_HEADER:
            raise SchemaMismatchError(
                f"{path}: header mismatch, expected {EXPECTED_HEADER}, got {header}"
            )
        rows = []
        for record in reader:
            if len(record) != len(EXPECTED_HEADER):
                raise SchemaMismatchError(f"{path}: ragged row {record}")
            cells = dict(zip(EXPECTED_HEADER, record))
            try:
                n = int(cells["N"])
                param = float(cells["param"])
            except ValueError as exc:
                raise SchemaMismatchError(f"{path}: bad N/param in {record}") from exc
            rows.append(
                SweepRow(
                    family=cells["family"],
                    n=n,
                    param=param,
                    lower=_parse_float(cells["lower"], "lower"),
                    upper=_parse_float(cells["upper"], "upper"),
                    estimate=_parse_float(cells["estimate"], "estimate"),
                    method=cells["method"],
                    tolerance=_parse_float(cells["tolerance"], "tolerance"),
                    valid_lower=_parse_bool(cells["valid_lower"], "valid_lower"),
                    valid_upper=_parse_bool(cells["valid_upper"], "valid_upper"),
                )
            )
    return rows


def _plot_curve(ax, rows, column, validity_column, color, label):
    points = [
        (row.param, getattr(row, column), getattr(row, validity_column) is not False
         if validity_column else True)
        for row in rows
        if getattr(row, column) is not None
    ]
    points = [(x, y, ok) for x, y, ok in points if y == y]  # drop NaN cells
    if not points:
        return
    valid = [(x, y) for x, y, ok in points if ok]
    invalid = [(x, y) for x, y, ok in points if not ok]
    if valid:
        ax.plot(*zip(*valid), "-", color=color, label=label)
    if invalid:
        ax.plot(
            *zip(*invalid),
            ":",
            marker="x",
            color=color,
            alpha=0.45,
            label=f"{label} (hypothesis fails)",
        )


def render(spec: PlotSpec) -> Path:
    """Render one sweep CSV to ``spec.output_image`` (.png or .svg)."""
    suffix = spec.output_image.suffix.lower()
    if suffix not in (".png", ".svg"):
        raise ValueError(f"output must end in .png or .svg, got {spec.output_image}")
    rows = load_sweep(spec.input_csv)
    rows = sorted(rows, key=lambda row: row.param)
    family = rows[0].family if rows else ""

    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    for column, validity_column, color, label in _CURVES:
        _plot_curve(ax, rows, column, validity_column, color, label)
    if family == "good":
        ax.axhline(0.5, color="0.4", linestyle="--", linewidth=1.0, label="1/2")
    if spec.log_x:
        ax.set_xscale("log")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    if spec.title:
        ax.set_title(spec.title)
    if rows:
        ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    metadata = {"Date": None} if suffix == ".svg" else None
    fig.savefig(spec.output_image, metadata=metadata)
    plt.close(fig)
    return spec.output_image
