"""Turn the package's CSV outputs into SVG figures."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .fock_states import STATE_COLUMNS
from .pattern import PATTERN_COLUMNS, TRACE_COLUMNS, fmt, read_columns
from .squeeze_optimizer import REPORT_COLUMNS
from .svgplot import PlotSpec, contour_plot, line_plot

QFUNC_COLUMNS = ("X", "Y", "q")

_AXES = {
    PATTERN_COLUMNS: ("x / lambda", "P_e"),
    TRACE_COLUMNS: ("g t", "P_e"),
    STATE_COLUMNS: ("n", "P(n)"),
    QFUNC_COLUMNS: ("Re alpha", "Im alpha"),
    REPORT_COLUMNS: ("r", "variance"),
}


def write_qfunc_csv(path, xs, ys, Z) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(QFUNC_COLUMNS)
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                w.writerow((fmt(x), fmt(y), fmt(Z[j, i])))


def _read_header(path) -> tuple[str, ...]:
    with open(path, newline="") as fh:
        first = next(csv.reader(fh), None)
    if not first:
        raise SchemaError(f"{path}: empty file")
    return tuple(h.strip() for h in first)


def _read_report(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))[1:]
    cand = np.array([[float(v) for v in r[1:]] for r in rows if r and r[0] == "candidate"])
    if cand.size == 0:
        raise SchemaError(f"{path}: no candidate rows")
    order = np.lexsort((cand[:, 0], cand[:, 1]))
    return cand[order, 1], cand[order, 3]


def _qgrid(data):
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    if xs.size * ys.size != data.shape[0]:
        raise SchemaError("Q-function CSV is not a full rectangular grid")
    Z = data[:, 2].reshape(ys.size, xs.size)
    return xs, ys, Z


def emit_plot(csv_paths, out_path, spec: PlotSpec | None = None) -> Path:
    """Render one or more CSVs sharing a schema to ``out_path``.

    Pattern, trace, state and optimizer-report files become overlaid line
    plots; Q-function grids become side-by-side contour panels.
    """
    if isinstance(csv_paths, (str, Path)):
        csv_paths = [csv_paths]
    if not csv_paths:
        raise SchemaError("no CSV given")
    spec = spec or PlotSpec()
    headers = {_read_header(p) for p in csv_paths}
    if len(headers) != 1:
        raise SchemaError("CSV files use different schemas")
    header = headers.pop()
    if header not in _AXES:
        raise SchemaError(f"unrecognised CSV header {','.join(header)}")
    xlabel, ylabel = _AXES[header]
    spec.xlabel = spec.xlabel or xlabel
    spec.ylabel = spec.ylabel or ylabel
    if header == REPORT_COLUMNS:
        svg = line_plot([_read_report(p) for p in csv_paths], spec)
    elif header == QFUNC_COLUMNS:
        svg = contour_plot([_qgrid(read_columns(p)[1]) for p in csv_paths], spec)
    else:
        series = []
        for p in csv_paths:
            _, data = read_columns(p)
            col = 3 if header == STATE_COLUMNS else 1
            series.append((data[:, 0], data[:, col]))
        svg = line_plot(series, spec)
    out_path = Path(out_path)
    out_path.write_text(svg)
    return out_path
