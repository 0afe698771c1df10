import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rabipattern import (
    DriveConfig,
    NoFeasiblePoint,
    SearchSpec,
    SqueezeParams,
    make_coherent,
    make_squeezed_coherent,
    photon_stats,
    quantum_pattern,
    search,
    variance_objective,
    visibility,
    wavelength_grid,
)
from rabipattern.squeeze_optimizer import REFERENCE_POINTS, feasible_candidates, write_report


def test_objective_examples():
    assert variance_objective(10.0, 0.0) == (pytest.approx(100.0), pytest.approx(100.0))
    mean, _ = variance_objective(99.9, 1.28)
    assert mean == pytest.approx(774.0, rel=0.01)
    _, var = variance_objective(23.2, 0.96)
    assert var == pytest.approx(17.137, rel=1e-3)


def test_reduction_is_exact_symbolically():
    b, r = sympy.symbols("b r", positive=True)
    ch, sh = sympy.cosh(r), sympy.sinh(r)
    mean_full = b**2 * (ch**2 + sh**2 - 2 * sh * ch) + sh**2
    var_full = b**2 * (sympy.cosh(4 * r) - sympy.sinh(4 * r)) + 2 * sh**2 * ch**2
    mean_red = b**2 * sympy.exp(-2 * r) + sh**2
    var_red = b**2 * sympy.exp(-4 * r) + 2 * sh**2 * ch**2
    assert sympy.simplify((mean_full - mean_red).rewrite(sympy.exp)) == 0
    assert sympy.simplify((var_full - var_red).rewrite(sympy.exp)) == 0


@settings(max_examples=100, deadline=None)
@given(beta=st.floats(0.0, 150.0), r=st.floats(0.0, 2.0))
def test_objective_matches_photon_stats(beta, r):
    m, v = variance_objective(beta, r)
    s = photon_stats(SqueezeParams(beta, 0.0, r, 0.0))
    assert m == pytest.approx(s.mean, rel=1e-10, abs=1e-12)
    assert v == pytest.approx(s.variance, rel=1e-10, abs=1e-12)


def test_objective_matches_constructed_states():
    for key in REFERENCE_POINTS:
        pt = REFERENCE_POINTS[key]
        m, v = variance_objective(pt["beta"], pt["r"])
        from rabipattern import photon_stats_numeric

        s = photon_stats_numeric(make_squeezed_coherent(SqueezeParams(pt["beta"], 0.0, pt["r"], 0.0)))
        assert s.mean == pytest.approx(m, rel=1e-9)
        assert s.variance == pytest.approx(v, rel=1e-7)


def test_search_target_100():
    spec = SearchSpec(100.0, (5.0, 40.0, 500), (0.0, 2.0, 400), 0.01)
    res = search(spec)
    assert res.achieved_variance < 100.0
    assert abs(res.achieved_mean - 100.0) <= 1.0
    # brute-force minimum over every feasible point
    b, r, m, v = feasible_candidates(spec)
    assert res.achieved_variance == v.min()
    assert res.candidates_evaluated == 500 * 400
    assert res.feasible == b.size
    # the fig4b reference point sits outside the mean constraint
    m_ref, v_ref = variance_objective(23.2, 0.96)
    assert abs(m_ref - 100.0) > 1.0
    assert res.achieved_variance == pytest.approx(19.80, rel=1e-3)
    assert v_ref == pytest.approx(17.14, rel=1e-3)


def test_search_target_774():
    res = search(SearchSpec(774.0, (20.0, 150.0, 500), (0.0, 2.0, 400), 0.01))
    _, v_ref = variance_objective(99.9, 1.28)
    assert res.achieved_variance <= v_ref


def test_no_squeezing_gives_coherent_floor():
    res = search(SearchSpec(100.0, (5.0, 15.0, 2001), (0.0, 0.0, 1), 0.01))
    assert res.r == 0.0
    # Poisson floor: variance equals mean, at the low edge of the 1% band
    assert res.achieved_variance == res.achieved_mean
    assert res.achieved_mean == pytest.approx(100.0, rel=0.01)
    assert res.beta_mag == pytest.approx(10.0, rel=0.006)


def test_not_minimised_at_zero_squeezing():
    for target in (10.0, 100.0, 774.0):
        res = search(SearchSpec(target, (0.0, 4 * math.sqrt(target), 600), (0.0, 2.0, 400)))
        assert res.r > 0
        assert res.achieved_variance < target


def test_no_feasible_point():
    with pytest.raises(NoFeasiblePoint):
        search(SearchSpec(1e6, (0.0, 10.0, 10), (0.0, 1.0, 10)))


@pytest.mark.parametrize(
    "kw",
    [
        dict(target_mean_n=0.0),
        dict(target_mean_n=10.0, beta_range=(5.0, 1.0, 10)),
        dict(target_mean_n=10.0, r_range=(0.0, 1.0, 1)),
        dict(target_mean_n=10.0, mean_tolerance=0.5),
    ],
)
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        SearchSpec(**kw)


def test_ties_prefer_less_squeezing():
    # duplicated grid points tie on variance; the smaller r / beta must win
    spec = SearchSpec(100.0, (10.0, 10.0, 1), (0.0, 0.0, 1), 0.01)
    res = search(spec)
    assert (res.beta_mag, res.r) == (10.0, 0.0)


@pytest.mark.parametrize("threads", [1, 2, 3, 4, "auto"])
def test_deterministic_across_threads(threads):
    spec = SearchSpec(100.0, (5.0, 40.0, 500), (0.0, 2.0, 400))
    assert search(spec, threads=threads) == search(spec)


def test_report(tmp_path):
    spec = SearchSpec(100.0, (5.0, 40.0, 50), (0.0, 2.0, 40), 0.05)
    res = search(spec)
    path = tmp_path / "report.csv"
    write_report(spec, res, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "row,beta,r,mean,variance"
    assert lines[-1].startswith("best,")
    assert len(lines) == res.feasible + 2


@pytest.mark.parametrize("key,target", [("fig4b", 100.0), ("fig4d", 27.8**2)])
def test_optimised_state_dominates_coherent(key, target):
    pt = REFERENCE_POINTS[key]
    alpha = pt["alpha"]
    res = search(SearchSpec(target, (0.0, 4 * alpha, 800), (0.0, 2.0, 400)))
    cfg = DriveConfig()
    grid = wavelength_grid(4096)
    area = alpha * pt["gt"]
    co = quantum_pattern(cfg, make_coherent(alpha), pt["gt"], grid)
    s = make_squeezed_coherent(SqueezeParams(res.beta_mag, 0.0, res.r, 0.0))
    sq = quantum_pattern(cfg, s, area / math.sqrt(s.mean_photon_number), grid)
    assert sq.pulse_area == pytest.approx(co.pulse_area, rel=1e-9)
    assert visibility(sq) >= visibility(co)
