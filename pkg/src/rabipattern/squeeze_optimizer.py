"""Exhaustive search for number-squeezed inputs at a fixed mean photon number.

With ``2 phi - theta = 0`` the closed-form moments reduce to

    mean     = |beta|^2 e^{-2r} + sinh^2 r
    variance = |beta|^2 e^{-4r} + 2 sinh^2 r cosh^2 r

and the search minimizes the variance over a ``(|beta|, r)`` grid among
points whose mean is within ``mean_tolerance`` of the target.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NoFeasiblePoint
from .kernels import resolve_threads
from .pattern import fmt

# Reference parameter sets of the fig4 presets, used verbatim by replicate mode.
REFERENCE_POINTS = {
    "fig4b": {"alpha": 10.0, "beta": 23.2, "r": 0.96, "gt": 1.5 * math.pi},
    "fig4d": {"alpha": 27.8, "beta": 99.9, "r": 1.28, "gt": 0.54 * math.pi},
}

REPORT_COLUMNS = ("row", "beta", "r", "mean", "variance")


@dataclass(frozen=True)
class SearchSpec:
    target_mean_n: float
    beta_range: tuple[float, float, int] = (0.0, 40.0, 500)
    r_range: tuple[float, float, int] = (0.0, 2.0, 400)
    mean_tolerance: float = 0.01

    def __post_init__(self):
        if not (math.isfinite(self.target_mean_n) and self.target_mean_n > 0):
            raise ValueError("target_mean_n must be > 0")
        for name in ("beta_range", "r_range"):
            lo, hi, steps = getattr(self, name)
            if not (math.isfinite(lo) and math.isfinite(hi) and 0 <= lo <= hi):
                raise ValueError(f"{name} needs 0 <= lo <= hi")
            if int(steps) != steps or steps < 1 or (steps < 2 and lo != hi):
                raise ValueError(f"{name} needs an integer step count >= 2")
        if not 0 < self.mean_tolerance <= 0.1:
            raise ValueError("mean_tolerance must lie in (0, 0.1]")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return _axis(*self.beta_range), _axis(*self.r_range)


def _axis(lo, hi, steps) -> np.ndarray:
    if lo == hi:
        return np.array([float(lo)])
    return np.linspace(lo, hi, int(steps))


@dataclass(frozen=True)
class OptimizerResult:
    beta_mag: float
    r: float
    achieved_mean: float
    achieved_variance: float
    candidates_evaluated: int
    feasible: int
    target_mean_n: float


def variance_objective(beta_mag, r):
    """``(mean, variance)`` of the photon number at ``2 phi - theta = 0``; broadcasts."""
    b2 = np.square(beta_mag)
    sh2 = np.sinh(r) ** 2
    mean = b2 * np.exp(-2.0 * np.asarray(r)) + sh2
    var = b2 * np.exp(-4.0 * np.asarray(r)) + 2.0 * sh2 * np.cosh(r) ** 2
    return mean, var


def _best_in_block(betas, rs, spec):
    B, R = np.meshgrid(betas, rs, indexing="ij")
    mean, var = variance_objective(B, R)
    ok = np.abs(mean - spec.target_mean_n) <= spec.mean_tolerance * spec.target_mean_n
    if not np.any(ok):
        return None, 0
    v, rr, bb = var[ok], R[ok], B[ok]
    # lexicographic (variance, r, beta)
    i = np.lexsort((bb, rr, v))[0]
    return (float(v[i]), float(rr[i]), float(bb[i]), float(mean[ok][i])), int(ok.sum())


def search(spec: SearchSpec, threads=1) -> OptimizerResult:
    """Grid point of least variance among those meeting the mean constraint.

    Ties break toward smaller ``r``, then smaller ``|beta|``. The grid is split
    into blocks of ``|beta|`` rows; the final reduction uses the same
    lexicographic key, so the answer does not depend on ``threads``.
    """
    betas, rs = spec.axes()
    nthreads = resolve_threads(threads)
    blocks = np.array_split(betas, max(1, min(nthreads * 4, betas.size)))
    if nthreads == 1:
        results = [_best_in_block(b, rs, spec) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as ex:
            results = list(ex.map(lambda b: _best_in_block(b, rs, spec), blocks))
    feasible = sum(n for _, n in results)
    cands = [best for best, _ in results if best is not None]
    if not cands:
        raise NoFeasiblePoint(
            f"no grid point has mean within {spec.mean_tolerance:.1%} of {spec.target_mean_n}"
        )
    var, r, beta, mean = min(cands, key=lambda c: (c[0], c[1], c[2]))
    return OptimizerResult(beta, r, mean, var, betas.size * rs.size, feasible, spec.target_mean_n)


def feasible_candidates(spec: SearchSpec):
    """All grid points meeting the mean constraint, ordered by ``(beta, r)``."""
    betas, rs = spec.axes()
    B, R = np.meshgrid(betas, rs, indexing="ij")
    mean, var = variance_objective(B, R)
    ok = np.abs(mean - spec.target_mean_n) <= spec.mean_tolerance * spec.target_mean_n
    return B[ok], R[ok], mean[ok], var[ok]


def write_report(spec: SearchSpec, result: OptimizerResult, path) -> None:
    """One row per feasible candidate followed by a ``best`` summary row."""
    b, r, m, v = feasible_candidates(spec)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for row in zip(b, r, m, v):
            w.writerow(("candidate", *(fmt(x) for x in row)))
        w.writerow(
            ("best", fmt(result.beta_mag), fmt(result.r), fmt(result.achieved_mean), fmt(result.achieved_variance))
        )
