"""Command-line front end.

    rabipattern simulate classical --pulse-area 4pi --grid 4096
    rabipattern fig 2c --out figs
    rabipattern optimize --target-mean 774

Every option may also be given in a ``key = value`` config file passed with
``--config``; options on the command line win. Exit status is 2 for bad
configuration, 3 for computation errors and 4 for I/O failures.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import shutil
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .classical_dynamics import ClassicalDrive, classical_pattern, classical_pe
from .errors import ComputeError, ConfigError, NoFringes, SchemaError
from .fock_states import (
    FieldState,
    SqueezeParams,
    make_coherent,
    make_squeezed_coherent,
    q_function_coherent,
    q_function_squeezed,
)
from .jc_dynamics import DriveConfig, quantum_pattern, time_trace
from .pattern import TRACE_COLUMNS, ExcitationPattern, fmt, read_pattern_csv, wavelength_grid, write_columns
from .pattern_analysis import PatternMetrics, compare_to_classical, count_peaks, rms_deviation, visibility
from .plotting import emit_plot, write_qfunc_csv
from .squeeze_optimizer import REFERENCE_POINTS, REPORT_COLUMNS, SearchSpec, search, variance_objective, write_report
from .svgplot import PlotSpec

PI = math.pi


def parse_angle(text) -> float:
    """Parse ``4pi``, ``0.01pi``, ``15*pi``, ``pi/2`` or a plain number."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower().replace(" ", "").replace("π", "pi")
    m = re.fullmatch(r"([-+]?[\d.eE+-]*?)\*?pi(?:/([\d.]+))?", s)
    try:
        if m:
            coef = m.group(1)
            val = (float(coef) if coef not in ("", "+", "-") else float(coef + "1")) * PI
            return val / float(m.group(2)) if m.group(2) else val
        return float(s)
    except ValueError:
        raise ConfigError(f"cannot parse number {text!r}") from None


def parse_threads(text):
    if str(text) == "auto":
        return "auto"
    try:
        n = int(text)
    except ValueError:
        raise ConfigError(f"--threads expects an integer or 'auto', got {text!r}") from None
    if n < 1:
        raise ConfigError("--threads must be >= 1")
    return n


# name -> (type, nargs, default, help)
OPTIONS = {
    "out": (str, None, "out", "output directory"),
    "config": (str, None, None, "key = value config file"),
    "grid": (int, None, 4096, "points per wavelength"),
    "format": (str, None, "both", "csv, svg or both"),
    "threads": (parse_threads, None, 1, "worker threads, or 'auto'"),
    "g": (float, None, 1.0, "single-photon coupling"),
    "pulse_area": (parse_angle, None, None, "classical omega0*t, or quantum g*sqrt(nbar)*t"),
    "gt": (parse_angle, None, None, "interaction time in units of 1/g"),
    "alpha": (float, None, 10.0, "coherent amplitude |alpha|"),
    "phi": (parse_angle, None, 0.0, "phase of alpha or beta"),
    "beta": (float, None, 10.0, "squeezed-state amplitude |beta|"),
    "r": (float, None, 0.5, "squeezing degree"),
    "theta": (parse_angle, None, 0.0, "squeezing phase"),
    "state": (str, None, "coherent", "coherent, squeezed or classical"),
    "x": (float, None, 0.0, "position in wavelengths"),
    "t_max": (parse_angle, None, 80.0, "largest g*t of a trace"),
    "t_points": (int, None, 8001, "samples in a trace"),
    "extent": (float, None, 20.0, "Q-function half-width around its centre"),
    "step": (float, None, 0.1, "Q-function grid step"),
    "window": (float, 2, (0.0, 1.0), "analysis window in wavelengths"),
    "prominence": (float, None, 0.1, "minimum peak prominence"),
    "classical_area": (parse_angle, None, None, "classical pulse area of an analyzed pattern"),
    "target_mean": (float, None, None, "target mean photon number"),
    "beta_range": (float, 3, None, "LO HI STEPS for |beta|"),
    "r_range": (float, 3, (0.0, 2.0, 400), "LO HI STEPS for r"),
    "tolerance": (float, None, 0.01, "relative tolerance on the mean"),
    "replicate": (str, None, None, "use the verbatim fig4b or fig4d parameters"),
}


def _add_options(p: argparse.ArgumentParser, names) -> None:
    for name in names:
        typ, nargs, _, help_ = OPTIONS[name]
        kw = dict(type=typ, default=argparse.SUPPRESS, help=help_, dest=name)
        if nargs:
            kw["nargs"] = nargs
            kw["metavar"] = ("LO", "HI", "STEPS")[:nargs] if nargs == 3 else ("LO", "HI")
        if name == "format":
            kw["choices"] = ("csv", "svg", "both")
        p.add_argument("--" + name.replace("_", "-"), **kw)


GLOBAL = ("out", "config", "grid", "format", "threads")
STATE_OPTS = ("alpha", "phi", "beta", "r", "theta")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_options(common, GLOBAL)
    parser = argparse.ArgumentParser(prog="rabipattern", description=__doc__.split("\n")[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="spatial excitation pattern")
    p.add_argument("kind", choices=("classical", "coherent", "squeezed"))
    _add_options(p, ("g", "pulse_area", "gt", *STATE_OPTS, "window", "prominence"))

    p = sub.add_parser("trace", parents=[common], help="excitation probability versus time")
    _add_options(p, ("state", "g", "x", "t_max", "t_points", "pulse_area", *STATE_OPTS))

    p = sub.add_parser("qfunc", parents=[common], help="Husimi Q function on a grid")
    _add_options(p, ("state", *STATE_OPTS, "extent", "step"))

    p = sub.add_parser("optimize", parents=[common], help="grid search for squeezing parameters")
    _add_options(p, ("target_mean", "beta_range", "r_range", "tolerance", "replicate"))

    p = sub.add_parser("analyze", parents=[common], help="metrics of a pattern CSV")
    p.add_argument("csv")
    _add_options(p, ("window", "prominence", "classical_area"))

    p = sub.add_parser("fig", parents=[common], help="run a built-in figure scenario")
    p.add_argument("id", help="one of: " + ", ".join(sorted(FIGURES)))
    return parser


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in OPTIONS or key == "config":
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        typ, nargs, _, _ = OPTIONS[key]
        try:
            if nargs:
                parts = value.replace(",", " ").split()
                if len(parts) != nargs:
                    raise ConfigError(f"{path}:{lineno}: {key} needs {nargs} values")
                out[key] = tuple(typ(v) for v in parts)
            else:
                out[key] = typ(value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
        if key == "format" and out[key] not in ("csv", "svg", "both"):
            raise ConfigError(f"{path}:{lineno}: format must be csv, svg or both")
    return out


def resolve_options(ns: argparse.Namespace) -> dict:
    """Merge built-in defaults < config file < command line."""
    given = vars(ns).copy()
    opts = {k: v[2] for k, v in OPTIONS.items()}
    if given.get("config"):
        opts.update(read_config(given["config"]))
    opts.update(given)
    return opts


# -- scenario execution -----------------------------------------------------


@dataclass
class Run:
    """Collects outputs of one scenario and writes them plus a manifest."""

    name: str
    opts: dict
    outputs: list = field(default_factory=list)

    def __post_init__(self):
        self.out = Path(self.opts["out"])
        self.fmt = self.opts["format"]
        self._tmp = None

    def _csv_dir(self) -> Path:
        if self.fmt in ("csv", "both"):
            return self.out
        if self._tmp is None:
            self._tmp = Path(tempfile.mkdtemp(prefix="rabipattern-"))
        return self._tmp

    def csv(self, stem: str, writer, schema: str, params: dict) -> Path:
        path = self._csv_dir() / f"{self.name}_{stem}.csv"
        writer(path)
        if self.fmt in ("csv", "both"):
            self.outputs.append({"file": path.name, "schema": schema, "params": params})
        return path

    def svg(self, stem: str, csv_paths, spec: PlotSpec, params: dict) -> None:
        if self.fmt not in ("svg", "both"):
            return
        path = self.out / f"{self.name}_{stem}.svg"
        emit_plot(csv_paths, path, spec)
        self.outputs.append({"file": path.name, "schema": "svg", "params": params})

    def finish(self) -> Path:
        manifest = {
            "scenario": self.name,
            "version": __version__,
            "options": {k: _jsonable(v) for k, v in sorted(self.opts.items()) if k not in ("out", "config")},
            "outputs": self.outputs,
        }
        path = self.out / f"{self.name}_manifest.json"
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        if self._tmp is not None:
            shutil.rmtree(self._tmp, ignore_errors=True)
        return path


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _state_params(kind: str, o: dict) -> dict:
    if kind == "coherent":
        return {"alpha": o["alpha"], "phi": o["phi"]}
    return {"beta": o["beta"], "phi": o["phi"], "r": o["r"], "theta": o["theta"]}


def make_state(kind: str, o: dict) -> FieldState:
    if kind == "coherent":
        return make_coherent(o["alpha"], o["phi"])
    if kind == "squeezed":
        return make_squeezed_coherent(SqueezeParams(o["beta"], o["phi"], o["r"], o["theta"]))
    raise ConfigError(f"unknown state kind {kind!r}")


def _validate_state(kind: str, o: dict) -> None:
    try:
        if kind == "coherent":
            if not (math.isfinite(o["alpha"]) and o["alpha"] >= 0):
                raise ValueError("alpha must be finite and >= 0")
        elif kind == "squeezed":
            SqueezeParams(o["beta"], o["phi"], o["r"], o["theta"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _mean_n(kind: str, o: dict) -> float:
    if kind == "coherent":
        return o["alpha"] ** 2
    return SqueezeParams(o["beta"], o["phi"], o["r"], o["theta"]).stats.mean


def _interaction_gt(kind: str, o: dict) -> float:
    """``g t`` from ``--gt`` or from a quantum pulse area ``g sqrt(nbar) t``."""
    if o.get("gt") is not None:
        return o["gt"]
    area = o.get("pulse_area")
    if area is None:
        raise ConfigError("give --gt or --pulse-area")
    nbar = _mean_n(kind, o)
    if nbar <= 0:
        raise ConfigError("pulse area is undefined for the vacuum; give --gt")
    return area / math.sqrt(nbar)


def _grid(o: dict) -> np.ndarray:
    lo, hi = o["window"]
    if o["grid"] < 1:
        raise ConfigError("--grid must be >= 1")
    if not hi > lo:
        raise ConfigError("window needs hi > lo")
    return wavelength_grid(int(round(o["grid"] * (hi - lo))), lo, hi)


def _metrics(p: ExcitationPattern, o: dict) -> PatternMetrics:
    return compare_to_classical(p, window=tuple(o["window"]), prominence=o["prominence"])


def _pattern_outputs(run: Run, stem: str, p: ExcitationPattern, o: dict, params: dict, title: str) -> Path:
    path = run.csv(stem, p.to_csv, "pattern", params)
    m = _metrics(p, o)
    run.csv(stem + "_metrics", m.to_csv, "metrics", params)
    run.svg(stem, [path], PlotSpec(title=title), params)
    return path


def cmd_simulate(o: dict, kind: str) -> Run:
    run = Run(f"simulate-{kind}", o)
    grid = _grid(o)
    if kind == "classical":
        area = o.get("pulse_area")
        if area is None:
            raise ConfigError("simulate classical needs --pulse-area")
        d = ClassicalDrive.from_pulse_area(area)
        p = classical_pattern(d, 1.0, grid)
        _pattern_outputs(run, "pattern", p, o, {"pulse_area": area}, f"classical, area {area / PI:g} pi")
        return run
    _validate_state(kind, o)
    gt = _interaction_gt(kind, o)
    cfg = DriveConfig(o["g"])
    s = make_state(kind, o)
    p = quantum_pattern(cfg, s, gt / o["g"], grid, threads=o["threads"])
    params = {**_state_params(kind, o), "g": o["g"], "gt": gt, "pulse_area": p.pulse_area}
    _pattern_outputs(run, "pattern", p, o, params, f"{s.describe()}, gt = {gt / PI:g} pi")
    return run


def _trace(kind: str, o: dict, gts: np.ndarray, x: float) -> np.ndarray:
    cfg = DriveConfig(o["g"])
    if kind == "classical":
        area_rate = o.get("pulse_area")
        if area_rate is None:
            raise ConfigError("classical trace needs --pulse-area (omega0 in units of g)")
        return classical_pe(ClassicalDrive(area_rate * o["g"], cfg.k), x, gts / o["g"])
    return time_trace(cfg, make_state(kind, o), x, gts / o["g"], threads=o["threads"])


def cmd_trace(o: dict) -> Run:
    kind = o["state"]
    if kind not in ("coherent", "squeezed", "classical"):
        raise ConfigError("--state must be coherent, squeezed or classical")
    if kind != "classical":
        _validate_state(kind, o)
    if o["t_points"] < 2 or not o["t_max"] > 0:
        raise ConfigError("trace needs --t-points >= 2 and --t-max > 0")
    gts = np.linspace(0.0, o["t_max"], o["t_points"])
    run = Run(f"trace-{kind}", o)
    pe = _trace(kind, o, gts, o["x"])
    params = {"state": kind, "x": o["x"], "g": o["g"], "t_max": o["t_max"]}
    if kind != "classical":
        params.update(_state_params(kind, o))
    path = run.csv("trace", lambda f: write_columns(f, TRACE_COLUMNS, gts, pe), "trace", params)
    run.svg("trace", [path], PlotSpec(title=f"{kind} trace at x = {o['x']:g}"), params)
    return run


def q_grid(kind: str, o: dict):
    step, ext = o["step"], o["extent"]
    if not (step > 0 and ext > 0):
        raise ConfigError("--step and --extent must be positive")
    if kind == "coherent":
        c = o["alpha"] * complex(math.cos(o["phi"]), math.sin(o["phi"]))
    else:
        p = SqueezeParams(o["beta"], o["phi"], o["r"], o["theta"])
        c = p.beta * math.exp(-p.r)
    half = math.ceil(ext / step)
    xs = np.round(c.real / step) * step + step * np.arange(-half, half + 1)
    ys = np.round(c.imag / step) * step + step * np.arange(-half, half + 1)
    X, Y = np.meshgrid(xs, ys)
    if kind == "coherent":
        Z = q_function_coherent(o["alpha"], o["phi"], X, Y)
    else:
        Z = q_function_squeezed(p, X, Y)
    return xs, ys, Z


def cmd_qfunc(o: dict) -> Run:
    kind = o["state"]
    if kind not in ("coherent", "squeezed"):
        raise ConfigError("--state must be coherent or squeezed")
    _validate_state(kind, o)
    run = Run(f"qfunc-{kind}", o)
    xs, ys, Z = q_grid(kind, o)
    params = {**_state_params(kind, o), "step": o["step"], "extent": o["extent"]}
    path = run.csv("q", lambda f: write_qfunc_csv(f, xs, ys, Z), "qfunc", params)
    run.svg("q", [path], PlotSpec(title=f"Q function, {kind}"), params)
    return run


def default_beta_range(target: float, r_hi: float) -> tuple[float, float, int]:
    return (0.0, math.sqrt(target) * math.exp(r_hi) * 1.05, 500)


def cmd_optimize(o: dict) -> Run:
    run = Run("optimize", o)
    if o.get("replicate"):
        key = o["replicate"]
        if key not in REFERENCE_POINTS:
            raise ConfigError(f"--replicate must be one of {', '.join(REFERENCE_POINTS)}")
        pt = REFERENCE_POINTS[key]
        mean, var = variance_objective(pt["beta"], pt["r"])
        rows = [("best", pt["beta"], pt["r"], float(mean), float(var))]
        params = {"replicate": key}
        run.csv("report", lambda f: _write_rows(f, rows), "optimizer_report", params)
        return run
    target = o.get("target_mean")
    if target is None:
        raise ConfigError("optimize needs --target-mean or --replicate")
    r_range = tuple(o["r_range"])
    beta_range = tuple(o["beta_range"]) if o.get("beta_range") else default_beta_range(target, r_range[1])
    try:
        spec = SearchSpec(target, _range(beta_range), _range(r_range), o["tolerance"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    res = search(spec, threads=o["threads"])
    params = {"target_mean": target, "beta_range": list(spec.beta_range), "r_range": list(spec.r_range),
              "tolerance": spec.mean_tolerance}
    path = run.csv("report", lambda f: write_report(spec, res, f), "optimizer_report", params)
    run.svg("report", [path], PlotSpec(title=f"feasible candidates, target mean {target:g}"), params)
    print(f"beta={res.beta_mag:.6g} r={res.r:.6g} mean={res.achieved_mean:.6g} variance={res.achieved_variance:.6g}")
    return run


def _range(t):
    lo, hi, n = t
    if n != int(n):
        raise ConfigError("range step count must be an integer")
    return (float(lo), float(hi), int(n))


def _write_rows(path, rows):
    with open(path, "w") as fh:
        fh.write(",".join(REPORT_COLUMNS) + "\n")
        for r in rows:
            fh.write(",".join([r[0], *(fmt(v) for v in r[1:])]) + "\n")


def cmd_analyze(o: dict, csv_path: str) -> Run:
    stem = Path(csv_path).stem
    run = Run(f"analyze-{stem}", o)
    p = read_pattern_csv(csv_path)
    area = o.get("classical_area")
    if area is not None:
        p = ExcitationPattern(p.positions, p.pe, area, p.source)
    window = tuple(o["window"])
    try:
        vis = visibility(p, window)
    except NoFringes:
        vis = 0.0
    if area is not None:
        rms = rms_deviation(p, classical_pattern(ClassicalDrive(area), 1.0, p.positions), window)
    else:
        rms = float("nan")
    m = PatternMetrics(count_peaks(p, o["prominence"], window), vis, rms, window)
    run.csv("metrics", m.to_csv, "metrics", {"source": Path(csv_path).name, "classical_area": area})
    print(",".join(m.csv_row()))
    return run


# -- figure presets ------------------------------------------------------------


def _fig_classical(area):
    def go(run: Run, o: dict):
        p = classical_pattern(ClassicalDrive(area), 1.0, _grid(o))
        _pattern_outputs(run, "pattern", p, o, {"pulse_area": area}, f"classical, omega0 t = {area / PI:g} pi")

    return go


def _fig2a(run: Run, o: dict):
    paths = []
    for kind, params in (("coherent", {"alpha": 10.0, "phi": 0.0}),
                         ("squeezed", {"beta": 10.0, "phi": 0.0, "r": 0.5, "theta": 0.0})):
        q = {**o, **params}
        xs, ys, Z = q_grid(kind, q)
        paths.append(run.csv(f"q_{kind}", lambda f, a=(xs, ys, Z): write_qfunc_csv(f, *a), "qfunc", params))
    run.svg("q", paths, PlotSpec(title="Q function", labels=["coherent alpha=10", "squeezed beta=10, r=0.5"]),
            {"panels": ["coherent", "squeezed"]})


def _fig2b(run: Run, o: dict):
    states = [
        ("coherent_a10", make_coherent(10.0), {"alpha": 10.0}),
        ("squeezed_b10_r0.5", make_squeezed_coherent(SqueezeParams(10.0, 0.0, 0.5, 0.0)), {"beta": 10.0, "r": 0.5}),
        ("squeezed_b23.2_r0.96", make_squeezed_coherent(SqueezeParams(23.2, 0.0, 0.96, 0.0)), {"beta": 23.2, "r": 0.96}),
    ]
    paths = [run.csv(f"state_{name}", s.to_csv, "state", params) for name, s, params in states]
    run.svg("distribution", paths, PlotSpec(title="photon number distribution", labels=[s[0] for s in states]),
            {"states": [s[0] for s in states]})


def _fig_trace(alpha: float):
    def go(run: Run, o: dict):
        gts = np.linspace(0.0, o["t_max"], o["t_points"])
        pe = time_trace(DriveConfig(1.0), make_coherent(alpha), 0.0, gts, threads=o["threads"])
        params = {"alpha": alpha, "x": 0.0, "t_max": o["t_max"]}
        path = run.csv("trace", lambda f: write_columns(f, TRACE_COLUMNS, gts, pe), "trace", params)
        run.svg("trace", [path], PlotSpec(title=f"coherent alpha = {alpha:g}, x = 0"), params)

    return go


def _fig3(alpha: float, area: float):
    def go(run: Run, o: dict):
        gt = area / alpha
        p = quantum_pattern(DriveConfig(1.0), make_coherent(alpha), gt, _grid(o), threads=o["threads"])
        _pattern_outputs(run, "pattern", p, o, {"alpha": alpha, "alpha_gt": area, "gt": gt},
                         f"alpha = {alpha:g}, alpha g t = {area / PI:g} pi")

    return go


def _fig4_inputs(key: str):
    pt = REFERENCE_POINTS[key]
    coh = make_coherent(pt["alpha"])
    sq = make_squeezed_coherent(SqueezeParams(pt["beta"], 0.0, pt["r"], 0.0))
    # classical reference at the Rabi frequency of the coherent input's mean photon number
    omega0 = 2.0 * pt["alpha"]
    return pt, coh, sq, omega0


def _fig4_trace(key: str, t_max: float):
    def go(run: Run, o: dict):
        pt, coh, sq, omega0 = _fig4_inputs(key)
        gts = np.linspace(0.0, t_max, o["t_points"])
        cfg = DriveConfig(1.0)
        curves = [
            ("classical", classical_pe(ClassicalDrive(omega0), 0.0, gts), {"omega0_over_g": omega0}),
            ("coherent", time_trace(cfg, coh, 0.0, gts), {"alpha": pt["alpha"]}),
            ("squeezed", time_trace(cfg, sq, 0.0, gts), {"beta": pt["beta"], "r": pt["r"]}),
        ]
        paths = [
            run.csv(f"trace_{name}", lambda f, y=y: write_columns(f, TRACE_COLUMNS, gts, y), "trace", params)
            for name, y, params in curves
        ]
        run.svg("trace", paths, PlotSpec(title=f"x = 0, {key}", labels=[c[0] for c in curves]), {"source": key})

    return go


def _fig4_pattern(key: str):
    def go(run: Run, o: dict):
        pt, coh, sq, omega0 = _fig4_inputs(key)
        grid = _grid(o)
        cfg = DriveConfig(1.0)
        gt = pt["gt"]
        pats = [
            ("classical", classical_pattern(ClassicalDrive(omega0), gt, grid), {"omega0_over_g": omega0, "gt": gt}),
            ("coherent", quantum_pattern(cfg, coh, gt, grid, threads=o["threads"]), {"alpha": pt["alpha"], "gt": gt}),
            ("squeezed", quantum_pattern(cfg, sq, gt, grid, threads=o["threads"]),
             {"beta": pt["beta"], "r": pt["r"], "gt": gt}),
        ]
        paths = []
        for name, p, params in pats:
            paths.append(run.csv(f"pattern_{name}", p.to_csv, "pattern", params))
            run.csv(f"pattern_{name}_metrics", _metrics(p, o).to_csv, "metrics", params)
        run.svg("pattern", paths, PlotSpec(title=f"gt = {gt / PI:g} pi", labels=[p[0] for p in pats]),
                {"source": key})

    return go


FIGURES = {
    "fig1b": _fig_classical(0.01 * PI),
    "fig1c": _fig_classical(4 * PI),
    "fig2a": _fig2a,
    "fig2b": _fig2b,
    "fig2c": _fig_trace(10.0),
    "fig2c-alt": _fig_trace(3.0),
    "fig3a": _fig3(20.0, 4 * PI),
    "fig3b": _fig3(10.0, 4 * PI),
    "fig3c": _fig3(1.0, 4 * PI),
    "fig3d": _fig3(20.0, 15 * PI),
    "fig3e": _fig3(10.0, 15 * PI),
    "fig3f": _fig3(1.0, 15 * PI),
    "fig4a": _fig4_trace("fig4b", 2 * PI),
    "fig4b": _fig4_pattern("fig4b"),
    "fig4c": _fig4_trace("fig4d", 0.75 * PI),
    "fig4d": _fig4_pattern("fig4d"),
}


def cmd_fig(o: dict, fig_id: str) -> Run:
    key = fig_id if fig_id.startswith("fig") else "fig" + fig_id
    if key not in FIGURES:
        raise ConfigError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURES)}")
    run = Run(key, o)
    FIGURES[key](run, o)
    return run


def run_scenario(argv=None) -> Run:
    ns = build_parser().parse_args(argv)
    o = resolve_options(ns)
    Path(o["out"]).mkdir(parents=True, exist_ok=True)
    if ns.command == "simulate":
        run = cmd_simulate(o, ns.kind)
    elif ns.command == "trace":
        run = cmd_trace(o)
    elif ns.command == "qfunc":
        run = cmd_qfunc(o)
    elif ns.command == "optimize":
        run = cmd_optimize(o)
    elif ns.command == "analyze":
        run = cmd_analyze(o, ns.csv)
    else:
        run = cmd_fig(o, ns.id)
    run.finish()
    return run


def main(argv=None) -> int:
    try:
        run_scenario(argv)
    except (ConfigError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputeError as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        # parameter validation inside module constructors
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
