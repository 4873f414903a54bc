"""Figure rendering for sweep CSV output."""

from .figure import (
    EXPECTED_COLUMNS,
    DataError,
    FigureSpec,
    RenderResult,
    SchemaError,
    collect_series,
    read_rows,
    render,
    resolve_group,
    resolve_y,
    sidecar_path_for,
    sidecar_text,
)

__version__ = "0.1.0"

__all__ = [
    "EXPECTED_COLUMNS",
    "DataError",
    "FigureSpec",
    "RenderResult",
    "SchemaError",
    "collect_series",
    "read_rows",
    "render",
    "resolve_group",
    "resolve_y",
    "sidecar_path_for",
    "sidecar_text",
    "__version__",
]
