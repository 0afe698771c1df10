"""Semiclassical Rabi excitation of a two-level atom in a standing wave.

Positions are measured in wavelengths (``k x = 2 pi x`` for the default
``k``); only the pulse area ``omega0 * t`` enters the results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import standing_wave
from .pattern import ExcitationPattern


@dataclass(frozen=True)
class ClassicalDrive:
    omega0: float
    k: float = 2.0 * math.pi

    def __post_init__(self):
        if not (math.isfinite(self.omega0) and self.omega0 >= 0):
            raise ValueError("omega0 must be finite and >= 0")
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError("k must be > 0")

    @classmethod
    def from_pulse_area(cls, area: float, t: float = 1.0, k: float = 2.0 * math.pi) -> "ClassicalDrive":
        return cls(area / t, k)


def classical_pe(d: ClassicalDrive, x, t: float):
    """``P_e = (1 - cos(omega0 t cos kx)) / 2``, written as ``sin^2`` to keep small-area accuracy."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("t must be >= 0")
    half = 0.5 * (d.omega0 * np.asarray(t, dtype=np.float64)) * standing_wave(x, d.k)
    return np.sin(half) ** 2


def classical_pattern(d: ClassicalDrive, t: float, grid) -> ExcitationPattern:
    grid = np.asarray(grid, dtype=np.float64)
    area = d.omega0 * t
    return ExcitationPattern(
        grid,
        classical_pe(d, grid, t),
        area,
        {"kind": "classical", "omega0": d.omega0, "t": t, "pulse_area": area},
    )
