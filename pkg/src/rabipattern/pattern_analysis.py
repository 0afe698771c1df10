"""Peak counting, fringe visibility and comparison against the classical pattern.

A window that covers exactly one wavelength of a uniform grid is treated as
periodic, so fringes sitting on the window edge (``x = 0``) are counted once.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .classical_dynamics import ClassicalDrive, classical_pattern
from .errors import GridMismatch, GridTooCoarse, NoFringes
from .pattern import ExcitationPattern, fmt

DEFAULT_WINDOW = (0.0, 1.0)
MIN_SAMPLES_PER_FRINGE = 16
PAIR_FLOOR = 1e-6

METRICS_COLUMNS = ("window_lo", "window_hi", "peak_count", "visibility", "rms_dev")


@dataclass(frozen=True)
class PatternMetrics:
    peak_count: int
    visibility: float
    rms_dev_from_classical: float
    window: tuple[float, float] = DEFAULT_WINDOW

    def csv_row(self) -> tuple[str, ...]:
        lo, hi = self.window
        return (fmt(lo), fmt(hi), str(self.peak_count), fmt(self.visibility), fmt(self.rms_dev_from_classical))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(METRICS_COLUMNS)
            w.writerow(self.csv_row())


def _windowed(p: ExcitationPattern, window) -> tuple[np.ndarray, np.ndarray, bool]:
    lo, hi = window
    if not hi > lo:
        raise ValueError("window must have hi > lo")
    sel = (p.positions >= lo) & (p.positions < hi)
    x, y = p.positions[sel], p.pe[sel]
    periodic = False
    if x.size >= 3 and math.isclose(hi - lo, 1.0):
        # patterns repeat every wavelength; wrap when the samples span the window
        step = float(np.max(np.diff(x)))
        periodic = math.isclose(x[0], lo, abs_tol=1e-12) and hi - x[-1] <= step * (1 + 1e-9)
    return x, y, periodic


def expected_fringes(pulse_area: float, width: float = 1.0) -> float:
    """Rough fringe count per window: two per wavelength at small area, ``2A/pi`` beyond."""
    return max(2.0, 2.0 * pulse_area / math.pi) * width


def _check_density(p: ExcitationPattern, nsamples: int, window) -> None:
    if not math.isfinite(p.classical_area):
        return
    fringes = expected_fringes(p.classical_area, window[1] - window[0])
    if nsamples < MIN_SAMPLES_PER_FRINGE * fringes:
        raise GridTooCoarse(
            f"{nsamples} samples for ~{fringes:.0f} fringes; need at least {MIN_SAMPLES_PER_FRINGE} per fringe"
        )


def _unwrap(y: np.ndarray, periodic: bool) -> np.ndarray:
    """For a periodic window, rotate to start at the global minimum and close the loop."""
    if not periodic:
        return y
    i = int(np.argmin(y))
    return np.concatenate([y[i:], y[: i + 1]])


def count_peaks(p: ExcitationPattern, prominence: float, window=DEFAULT_WINDOW) -> int:
    """Number of local maxima with topographic prominence >= ``prominence`` in ``window``.

    The grid must resolve every fringe: adjacent samples near extrema should
    differ by well under ``prominence``. Fewer than 16 samples per expected
    fringe raises :class:`GridTooCoarse`.
    """
    x, y, periodic = _windowed(p, window)
    _check_density(p, x.size, window)
    if y.size < 3 or np.ptp(y) == 0:
        return 0
    peaks, _ = find_peaks(_unwrap(y, periodic), prominence=prominence)
    return int(peaks.size)


# maps samples at offsets -2..2 to coefficients of the interpolating quartic
_QUARTIC = np.linalg.inv(np.vander(np.arange(-2.0, 3.0), 5, increasing=True))


def _refine(y: np.ndarray, i: np.ndarray) -> np.ndarray:
    """Extremum value near sample ``i`` from the local interpolating polynomial.

    A quartic through five samples where available, else a parabola through
    three (assumes locally uniform spacing).
    """
    n = y.size
    y0, y1, y2 = y[i - 1], y[i], y[np.minimum(i + 1, n - 1)]
    curv = y0 - 2.0 * y1 + y2
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(curv != 0, (y0 - y2) / (2.0 * curv), 0.0)
        out = np.where(curv != 0, y1 - (y2 - y0) ** 2 / (8.0 * curv), y1)
    wide = (i >= 2) & (i + 2 < n)
    if np.any(wide):
        j = i[wide]
        c = (y[j[:, None] + np.arange(-2, 3)]) @ _QUARTIC.T
        u = np.clip(s[wide], -1.0, 1.0)
        for _ in range(4):
            d1 = c[:, 1] + u * (2 * c[:, 2] + u * (3 * c[:, 3] + u * 4 * c[:, 4]))
            d2 = 2 * c[:, 2] + u * (6 * c[:, 3] + u * 12 * c[:, 4])
            with np.errstate(divide="ignore", invalid="ignore"):
                step = np.where(d2 != 0, d1 / d2, 0.0)
            u = np.clip(u - step, -1.0, 1.0)
        out[wide] = c[:, 0] + u * (c[:, 1] + u * (c[:, 2] + u * (c[:, 3] + u * c[:, 4])))
    return out


def _extrema(y: np.ndarray) -> np.ndarray:
    """Values at interior local extrema, in order; plateaus count once.

    Each value comes from the polynomial through the neighbouring samples,
    clipped to [0, 1].
    """
    idx = np.nonzero(np.concatenate([[True], np.diff(y) != 0]))[0]
    v = y[idx]
    if v.size < 3:
        return v[:0]
    d = np.sign(np.diff(v))
    i = idx[np.nonzero(d[1:] != d[:-1])[0] + 1]
    return np.clip(_refine(y, i), 0.0, 1.0)


def visibility(p: ExcitationPattern, window=DEFAULT_WINDOW) -> float:
    """Mean Michelson contrast ``(P_max - P_min)/(P_max + P_min)`` over adjacent extrema.

    Pairs with ``P_max + P_min < 1e-6`` are skipped. Raises :class:`NoFringes`
    when no pair qualifies.
    """
    x, y, periodic = _windowed(p, window)
    ext = _extrema(_unwrap(y, periodic))
    if ext.size < 2:
        raise NoFringes("pattern has no interior extremum pair")
    a, b = ext[:-1], ext[1:]
    hi, lo = np.maximum(a, b), np.minimum(a, b)
    tot = hi + lo
    ok = tot >= PAIR_FLOOR
    if not np.any(ok):
        raise NoFringes("every extremum pair is below the contrast floor")
    return float(np.clip(np.mean((hi[ok] - lo[ok]) / tot[ok]), 0.0, 1.0))


def rms_deviation(p: ExcitationPattern, q: ExcitationPattern, window=DEFAULT_WINDOW) -> float:
    if p.positions.shape != q.positions.shape or not np.array_equal(p.positions, q.positions):
        raise GridMismatch("patterns are sampled on different grids")
    sel = (p.positions >= window[0]) & (p.positions < window[1])
    if not np.any(sel):
        raise ValueError("window contains no samples")
    d = p.pe[sel] - q.pe[sel]
    return math.sqrt(math.fsum(d * d) / d.size)


def matched_classical_drive(p: ExcitationPattern, t: float = 1.0, k: float = 2.0 * math.pi) -> ClassicalDrive:
    """Classical drive producing the same fringe structure as ``p`` at time ``t``."""
    return ClassicalDrive.from_pulse_area(p.classical_area, t, k)


def compare_to_classical(
    p: ExcitationPattern,
    d: ClassicalDrive | None = None,
    t: float = 1.0,
    window=DEFAULT_WINDOW,
    prominence: float = 0.1,
    reference: ExcitationPattern | None = None,
) -> PatternMetrics:
    """Metrics of ``p`` plus its rms distance from a classical pattern.

    The classical reference is ``reference`` if given, else the pattern of
    drive ``d`` at time ``t`` on ``p``'s grid; with neither, the drive is
    matched to ``p.classical_area``. A pattern without fringes reports visibility 0.
    """
    if reference is None:
        if d is None:
            d = matched_classical_drive(p, t)
        reference = classical_pattern(d, t, p.positions)
    rms = rms_deviation(p, reference, window)
    try:
        vis = visibility(p, window)
    except NoFringes:
        vis = 0.0
    return PatternMetrics(count_peaks(p, prominence, window), vis, rms, tuple(window))
