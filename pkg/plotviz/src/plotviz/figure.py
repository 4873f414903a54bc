"""Turn sweep CSV files into line figures plus a plain-text series sidecar.

The sidecar exists for golden-file testing: every plotted (x, y) pair is the
verbatim field text from the CSV, never a reformatted float, so a byte
comparison of sidecars is a byte comparison of the plotted data.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

# The column layout the sweep harness writes.  Restated here on purpose:
# the CSV schema is the contract between the two packages.
EXPECTED_COLUMNS = (
    "config_id",
    "sweep_param",
    "sweep_value",
    "n",
    "k",
    "q",
    "psi",
    "rho_or_NA",
    "dist_mu",
    "dist_sigma",
    "pr",
    "fatigue_kind",
    "compared_problem",
    "compared_screener",
    "runs_total",
    "runs_feasible",
    "mean_rtb",
    "sd_rtb",
    "mean_jds",
    "sd_jds",
    "mean_frac_protected",
    "mean_evaluated_count",
    "master_seed",
)

Y_ALIASES = {
    "rtb": "mean_rtb",
    "jds": "mean_jds",
    "frac": "mean_frac_protected",
}

GROUP_ALIASES = {
    "dist": "dist_mu",
    "rho": "rho_or_NA",
    "fatigue": "fatigue_kind",
    "q": "q",
}

X_COLUMN = "sweep_value"


class SchemaError(ValueError):
    """The CSV header does not match the sweep output contract."""


class DataError(ValueError):
    """The rows cannot form valid series (bad x values, nothing to plot)."""


@dataclass(frozen=True)
class FigureSpec:
    csv_paths: tuple[str, ...]
    y_column: str
    group_column: str
    out_path: str
    title: str | None = None
    x_column: str = X_COLUMN

    def __post_init__(self) -> None:
        if not self.csv_paths:
            raise DataError("at least one CSV path is required")
        for col in (self.x_column, self.y_column, self.group_column):
            if col not in EXPECTED_COLUMNS:
                raise SchemaError(f"unknown column {col!r}; expected one of {', '.join(EXPECTED_COLUMNS)}")


@dataclass(frozen=True)
class RenderResult:
    image_path: str
    sidecar_path: str
    series: tuple[tuple[str, tuple[tuple[str, str], ...]], ...]
    lines_drawn: int
    omitted_rows: int


def resolve_y(name: str) -> str:
    if name in Y_ALIASES:
        return Y_ALIASES[name]
    raise SchemaError(f"unknown y choice {name!r}; pick one of {', '.join(sorted(Y_ALIASES))}")


def resolve_group(name: str) -> str:
    if name in GROUP_ALIASES:
        return GROUP_ALIASES[name]
    if name in EXPECTED_COLUMNS:
        return name
    choices = ", ".join(sorted(GROUP_ALIASES)) + " or any output column"
    raise SchemaError(f"unknown group column {name!r}; pick {choices}")


def read_rows(path: str) -> list[dict[str, str]]:
    """Read one sweep CSV, insisting on the exact header contract."""
    text = Path(path).read_text()
    lines = [ln for ln in text.split("\n") if ln != ""]
    if not lines:
        raise SchemaError(f"{path}: empty file, no header")
    header = tuple(lines[0].split(","))
    if header != EXPECTED_COLUMNS:
        missing = [c for c in EXPECTED_COLUMNS if c not in header]
        unexpected = [c for c in header if c not in EXPECTED_COLUMNS]
        bits = [f"{path}: header does not match the sweep output schema"]
        if missing:
            bits.append(f"missing columns: {', '.join(missing)}")
        if unexpected:
            bits.append(f"unexpected columns: {', '.join(unexpected)}")
        if not missing and not unexpected:
            bits.append("columns are present but out of order")
        raise SchemaError("; ".join(bits))
    rows = []
    for ln in lines[1:]:
        fields = ln.split(",")
        if len(fields) != len(EXPECTED_COLUMNS):
            raise SchemaError(f"{path}: row has {len(fields)} fields, header has {len(EXPECTED_COLUMNS)}")
        rows.append(dict(zip(EXPECTED_COLUMNS, fields)))
    return rows


def _group_sort_key(label: str):
    try:
        return (0, float(label), "")
    except ValueError:
        return (1, 0.0, label)


def collect_series(spec: FigureSpec, rows: list[dict[str, str]]):
    """Group and sort plottable rows; returns (series, omitted, warnings)."""
    groups: dict[str, list[dict[str, str]]] = {}
    omitted = 0
    warnings: list[str] = []
    for row in rows:
        if row["runs_feasible"] == "0" or row[spec.y_column] == "NA":
            omitted += 1
            warnings.append(
                f"omitting {row['config_id']} {spec.x_column}={row[spec.x_column]}: "
                "no feasible runs, nothing to plot"
            )
            continue
        groups.setdefault(row[spec.group_column], []).append(row)
    if not groups:
        raise DataError("no plottable rows: every row lacks feasible runs")

    series = []
    for label in sorted(groups, key=_group_sort_key):
        members = groups[label]
        try:
            members.sort(key=lambda r: float(r[spec.x_column]))
        except ValueError:
            raise DataError(
                f"group {spec.group_column}={label}: non-numeric {spec.x_column} "
                "(a sweepless run has nothing to plot along x)"
            )
        xs = [float(r[spec.x_column]) for r in members]
        for lo, hi in zip(xs, xs[1:]):
            if hi <= lo:
                raise DataError(
                    f"group {spec.group_column}={label}: {spec.x_column} values must be "
                    f"strictly increasing, saw {lo!r} then {hi!r}"
                )
        pairs = tuple((r[spec.x_column], r[spec.y_column]) for r in members)
        series.append((label, pairs))
    return tuple(series), omitted, warnings


def sidecar_text(spec: FigureSpec, series) -> str:
    """One block per group; data lines are raw CSV field text joined by a comma."""
    blocks = []
    for label, pairs in series:
        lines = [f"series {spec.group_column}={label}"]
        lines += [f"{x},{y}" for x, y in pairs]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def sidecar_path_for(out_path: str) -> str:
    p = Path(out_path)
    return str(p.with_name(p.stem + ".series.txt"))


def render(spec: FigureSpec) -> RenderResult:
    rows: list[dict[str, str]] = []
    for path in spec.csv_paths:
        rows.extend(read_rows(path))
    series, omitted, warnings = collect_series(spec, rows)
    for message in warnings:
        print(f"warning: {message}", file=sys.stderr)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    try:
        for label, pairs in series:
            xs = [float(x) for x, _ in pairs]
            ys = [float(y) for _, y in pairs]
            ax.plot(xs, ys, marker="o", markersize=3, label=f"{spec.group_column}={label}")
        ax.set_xlabel(spec.x_column)
        ax.set_ylabel(spec.y_column)
        ax.set_title(spec.title or f"{spec.y_column} by {spec.group_column}")
        if len(series) > 1:
            ax.legend()
        lines_drawn = len(ax.get_lines())
        fig.tight_layout()
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)

    sidecar = sidecar_path_for(spec.out_path)
    Path(sidecar).write_text(sidecar_text(spec, series))
    return RenderResult(spec.out_path, sidecar, series, lines_drawn, omitted)
