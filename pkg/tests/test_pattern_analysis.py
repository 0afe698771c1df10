import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rabipattern import (
    ClassicalDrive,
    DriveConfig,
    ExcitationPattern,
    GridTooCoarse,
    NoFringes,
    SqueezeParams,
    classical_pattern,
    compare_to_classical,
    count_peaks,
    make_coherent,
    make_squeezed_coherent,
    quantum_pattern,
    visibility,
    wavelength_grid,
)
from rabipattern.errors import GridMismatch
from rabipattern.pattern_analysis import METRICS_COLUMNS, rms_deviation

PI = math.pi
CFG = DriveConfig()
GRID = wavelength_grid(4096)


def classical(area, grid=GRID):
    return classical_pattern(ClassicalDrive(area), 1.0, grid)


def coherent(alpha, gt, grid=GRID):
    return quantum_pattern(CFG, make_coherent(alpha), gt, grid)


def squeezed(beta, r, gt, grid=GRID):
    return quantum_pattern(CFG, make_squeezed_coherent(SqueezeParams(beta, 0.0, r, 0.0)), gt, grid)


def test_peak_count_examples():
    assert count_peaks(classical(4 * PI), 0.1) == 8
    assert count_peaks(classical(0.01 * PI), 1e-6) == 2
    flat = ExcitationPattern(GRID, np.zeros_like(GRID), 0.0)
    assert count_peaks(flat, 0.1) == 0


def test_coarse_grid_rejected():
    with pytest.raises(GridTooCoarse):
        count_peaks(classical(15 * PI, wavelength_grid(256)), 0.1)


def test_prominence_filters_small_ripples():
    x = GRID
    y = 0.5 + 0.4 * np.cos(2 * PI * 2 * x) + 0.01 * np.cos(2 * PI * 40 * x)
    p = ExcitationPattern(x, y, 0.0)
    assert count_peaks(p, 0.1) == 2


def test_partial_window():
    p = classical(4 * PI)
    assert count_peaks(p, 0.1, window=(0.0, 0.5)) + count_peaks(p, 0.1, window=(0.5, 1.0)) >= 8


@pytest.mark.parametrize("k", [1, 2, 3, 4, 8, 15])
def test_classical_visibility_is_one(k):
    assert visibility(classical(k * PI)) == pytest.approx(1.0, abs=1e-9)


def test_small_alpha_loses_visibility():
    v1 = visibility(coherent(1.0, 4 * PI))
    v20 = visibility(coherent(20.0, 4 * PI / 20))
    assert v1 < 1.0
    assert v1 < v20


def test_constant_pattern_has_no_fringes():
    p = ExcitationPattern(GRID, np.full_like(GRID, 0.3), 1.0)
    with pytest.raises(NoFringes):
        visibility(p)


def test_compare_classical_with_itself():
    c = classical(4 * PI)
    m = compare_to_classical(c, ClassicalDrive(4 * PI), 1.0)
    assert m.rms_dev_from_classical == 0.0
    assert m.peak_count == 8
    assert m.visibility == pytest.approx(1.0, abs=1e-9)


def test_grid_mismatch():
    with pytest.raises(GridMismatch):
        rms_deviation(classical(PI), classical(PI, wavelength_grid(4000)))


def test_squeezing_beats_coherent_fig4():
    rb_c = compare_to_classical(coherent(10.0, 1.5 * PI)).rms_dev_from_classical
    rb_s = compare_to_classical(squeezed(23.2, 0.96, 1.5 * PI)).rms_dev_from_classical
    rd_c = compare_to_classical(coherent(27.8, 0.54 * PI)).rms_dev_from_classical
    rd_s = compare_to_classical(squeezed(99.9, 1.28, 0.54 * PI)).rms_dev_from_classical
    assert rb_s < rb_c
    assert rd_s < rd_c < rb_c


def test_metrics_csv(tmp_path):
    m = compare_to_classical(classical(2 * PI))
    path = tmp_path / "m.csv"
    m.to_csv(path)
    header, row = path.read_text().splitlines()
    assert tuple(header.split(",")) == METRICS_COLUMNS
    assert row.split(",")[2] == "4"


def test_fringeless_metrics_report_zero_visibility():
    p = ExcitationPattern(GRID, np.full_like(GRID, 0.3), 1.0)
    assert compare_to_classical(p).visibility == 0.0


@settings(max_examples=20, deadline=None)
@given(c=st.floats(0.11, 1.0), k=st.integers(1, 12))
def test_peak_count_scale_invariant(c, k):
    p = classical(k * PI)
    assert count_peaks(p.scaled(c), 0.1) == count_peaks(p, 0.1)


@pytest.mark.parametrize(
    "make",
    [
        lambda g: classical(15 * PI, g),
        lambda g: coherent(10.0, 4 * PI / 10, g),
        lambda g: coherent(1.0, 4 * PI, g),
        lambda g: squeezed(23.2, 0.96, 1.5 * PI, g),
    ],
)
def test_refinement_invariance(make):
    a, b = make(wavelength_grid(2048)), make(wavelength_grid(4096))
    assert count_peaks(a, 0.1) == count_peaks(b, 0.1)
    assert abs(visibility(a) - visibility(b)) < 0.01


def test_rms_symmetric_and_zero_only_when_equal():
    a, b = coherent(10.0, 0.4 * PI), classical(8 * PI)
    assert rms_deviation(a, b) == rms_deviation(b, a) > 0
    assert rms_deviation(a, a) == 0.0
