"""Resonant Jaynes-Cummings evolution of a ground-state atom in a standing-wave mode.

For an initial state ``|b> sum_n c_n |n>`` the pair ``|b,n>, |a,n-1>`` exchanges
population at Rabi frequency ``2 g cos(kx) sqrt(n)``, so

    P_e(x, t) = sum_n |c_n|^2 sin^2(g t cos(kx) sqrt(n)).

Coherent and squeezed coherent inputs differ only in the weights ``|c_n|^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NodePosition
from .fock_states import FieldState
from .kernels import excitation_sum, standing_wave
from .pattern import ExcitationPattern

SUPPORT_TAIL = 1e-16


@dataclass(frozen=True)
class DriveConfig:
    g: float = 1.0
    k: float = 2.0 * math.pi
    detuning: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.g) and self.g > 0):
            raise ValueError("g must be > 0")
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError("k must be > 0")
        if self.detuning != 0:
            raise ValueError("only resonant driving (detuning = 0) is supported")


@dataclass(frozen=True)
class CollapseRevival:
    t_collapse: float
    t_revival: float
    m: int = 1


@dataclass(frozen=True, eq=False)
class JointAmplitudes:
    """``ground[n] = C_{b,n}`` for ``n = 0..n_max``; ``excited[n] = C_{a,n}`` for ``n = 0..n_max-1``."""

    ground: np.ndarray
    excited: np.ndarray

    @property
    def total_probability(self) -> float:
        return math.fsum(np.abs(self.ground) ** 2) + math.fsum(np.abs(self.excited) ** 2)

    @property
    def excited_probability(self) -> float:
        return math.fsum(np.abs(self.excited) ** 2)


def _areas(cfg: DriveConfig, x, t) -> np.ndarray:
    return np.asarray((cfg.g * np.asarray(t, dtype=np.float64)) * standing_wave(x, cfg.k), dtype=np.float64)


def _evaluate(s: FieldState, area, threads=1, backend=None) -> np.ndarray:
    w, q = s.support(SUPPORT_TAIL)
    shape = np.shape(area)
    out = excitation_sum(w, q, np.ravel(area), threads=threads, backend=backend)
    return np.clip(out, 0.0, 1.0).reshape(shape)


def quantum_pe(cfg: DriveConfig, s: FieldState, x, t, backend=None):
    """Excited-state probability at position(s) ``x`` (wavelengths) and time ``t``."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("t must be >= 0")
    x, t = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(t, dtype=np.float64))
    out = _evaluate(s, _areas(cfg, x, t), backend=backend)
    return out if out.ndim else float(out)


def quantum_pattern(cfg: DriveConfig, s: FieldState, t: float, grid, threads=1, backend=None) -> ExcitationPattern:
    if t < 0:
        raise ValueError("t must be >= 0")
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("grid must be nonempty")
    pe = _evaluate(s, _areas(cfg, grid, t), threads=threads, backend=backend)
    nbar = s.mean_photon_number
    area = cfg.g * t * math.sqrt(nbar)
    return ExcitationPattern(
        grid,
        pe,
        area,
        {"kind": s.kind, "state": s.describe(), "g": cfg.g, "t": t, "mean_n": nbar},
        classical_area=2.0 * area,
    )


def time_trace(cfg: DriveConfig, s: FieldState, x: float, t_grid, threads=1, backend=None) -> np.ndarray:
    t_grid = np.asarray(t_grid, dtype=np.float64)
    if np.any(t_grid < 0):
        raise ValueError("times must be >= 0")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be increasing")
    return _evaluate(s, _areas(cfg, x, t_grid), threads=threads, backend=backend)


def collapse_revival_times(cfg: DriveConfig, alpha_mag: float, x: float, m: int = 1) -> CollapseRevival:
    """Order-of-magnitude collapse time ``1/(2 g |cos kx|)`` and ``m``-th revival ``2 pi m alpha / (g |cos kx|)``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    c = abs(float(standing_wave(x, cfg.k)))
    if c < 1e-12:
        raise NodePosition(f"x={x} is a node of the standing wave; collapse and revival never occur")
    return CollapseRevival(1.0 / (2.0 * cfg.g * c), 2.0 * math.pi * m * alpha_mag / (cfg.g * c), m)


def full_state(cfg: DriveConfig, s: FieldState, x: float, t: float) -> JointAmplitudes:
    """Joint atom-field amplitudes at time ``t``."""
    if t < 0:
        raise ValueError("t must be >= 0")
    phase = float(_areas(cfg, x, t)) * s.sqrt_n
    ground = s.coeffs * np.cos(phase)
    excited = 1j * s.coeffs[1:] * np.sin(phase[1:])
    return JointAmplitudes(ground, excited)
