"""Sampled excitation patterns and traces, plus their CSV schemas."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaError

PATTERN_COLUMNS = ("x_over_lambda", "pe")
TRACE_COLUMNS = ("gt", "pe")


def fmt(v: float) -> str:
    """Fixed 17-significant-digit scientific notation."""
    return f"{float(v):.16e}"


@dataclass(frozen=True, eq=False)
class ExcitationPattern:
    """Excited-state probability sampled over positions (in wavelengths) at fixed time.

    ``pulse_area`` is ``omega0 t`` for a classical drive and ``g t sqrt(nbar)``
    for a quantized one. ``classical_area`` is the classical pulse area with the
    same fringe structure; the n-photon manifold Rabi-flops at ``2 g sqrt(n)``,
    so for quantum patterns it is ``2 g t sqrt(nbar)``.
    """

    positions: np.ndarray
    pe: np.ndarray
    pulse_area: float
    source: dict = field(default_factory=dict)
    classical_area: float | None = None

    def __post_init__(self):
        x = np.array(self.positions, dtype=np.float64).ravel()
        pe = np.array(self.pe, dtype=np.float64).ravel()
        if x.size == 0:
            raise ValueError("pattern grid must be nonempty")
        if x.shape != pe.shape:
            raise ValueError("positions and pe must have the same length")
        if np.any(np.diff(x) <= 0):
            raise ValueError("positions must be strictly increasing")
        if np.any(pe < 0) or np.any(pe > 1):
            raise ValueError("pe must lie in [0, 1]")
        x.setflags(write=False)
        pe.setflags(write=False)
        object.__setattr__(self, "positions", x)
        object.__setattr__(self, "pe", pe)
        if self.classical_area is None:
            object.__setattr__(self, "classical_area", float(self.pulse_area))

    def scaled(self, c: float) -> "ExcitationPattern":
        return ExcitationPattern(self.positions, self.pe * c, self.pulse_area, dict(self.source), self.classical_area)

    def to_csv(self, path) -> None:
        write_columns(path, PATTERN_COLUMNS, self.positions, self.pe)


def wavelength_grid(points: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    """``points`` uniform samples covering ``[lo, hi)``."""
    if points < 1:
        raise ValueError("grid needs at least one point")
    return lo + (hi - lo) * np.arange(points) / points


def write_columns(path, header, *cols) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*cols):
            w.writerow([fmt(v) for v in row])


def read_columns(path) -> tuple[tuple[str, ...], np.ndarray]:
    """Read a numeric CSV with a header row. Raises :class:`SchemaError` if empty or ragged."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if len(rows) < 2:
        raise SchemaError(f"{path}: no data rows")
    header = tuple(h.strip() for h in rows[0])
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=np.float64)
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric value ({exc})") from None
    if data.ndim != 2 or data.shape[1] != len(header):
        raise SchemaError(f"{path}: ragged rows")
    return header, data


def read_pattern_csv(path, pulse_area: float = float("nan")) -> ExcitationPattern:
    header, data = read_columns(path)
    if header != PATTERN_COLUMNS:
        raise SchemaError(f"{path}: expected header {','.join(PATTERN_COLUMNS)}")
    return ExcitationPattern(data[:, 0], data[:, 1], pulse_area, {"file": str(path)})
