import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rabipattern import (
    ClassicalDrive,
    DriveConfig,
    FieldState,
    NodePosition,
    SqueezeParams,
    classical_pattern,
    classical_pe,
    collapse_revival_times,
    full_state,
    make_coherent,
    make_squeezed_coherent,
    quantum_pattern,
    quantum_pe,
    time_trace,
    wavelength_grid,
)

PI = math.pi
CFG = DriveConfig()


def half_swing(y):
    return float(np.ptp(y)) / 2


def test_detuning_rejected():
    with pytest.raises(ValueError):
        DriveConfig(detuning=0.1)
    with pytest.raises(ValueError):
        DriveConfig(g=0.0)


def test_vacuum_never_excites():
    s = make_coherent(0.0)
    t = np.linspace(0, 50, 101)
    assert np.all(time_trace(CFG, s, 0.0, t) == 0)
    assert quantum_pe(CFG, s, 0.13, 7.0) == 0.0


def test_single_photon_rabi():
    s = FieldState.fock(1)
    t = np.linspace(0, 10, 201)
    np.testing.assert_allclose(time_trace(CFG, s, 0.0, t), np.sin(t) ** 2, atol=1e-15)


def test_collapse_and_revival_alpha10():
    s = make_coherent(10.0)
    t = np.linspace(3, 20 * PI - 3, 20001)
    assert np.max(np.abs(time_trace(CFG, s, 0.0, t) - 0.5)) < 0.25
    quiet = np.linspace(5, 15, 4001)
    assert half_swing(time_trace(CFG, s, 0.0, quiet)) < 0.1
    rev = np.linspace(20 * PI - 5, 20 * PI + 5, 4001)
    assert half_swing(time_trace(CFG, s, 0.0, rev)) > 0.2


def test_short_times_track_classical():
    # n-photon manifolds flop at 2 g sqrt(n); the matched classical drive is 2 g sqrt(nbar)
    s = make_coherent(10.0)
    t = np.linspace(0, 0.05, 51)
    q = time_trace(CFG, s, 0.0, t)
    c = classical_pe(ClassicalDrive(2 * 10.0), 0.0, t)
    assert np.max(np.abs(q - c)) < 0.01
    late = np.linspace(1.0, 2.0, 51)
    assert np.max(np.abs(time_trace(CFG, s, 0.0, late) - classical_pe(ClassicalDrive(20.0), 0.0, late))) > 0.1


def test_squeezing_delays_collapse():
    t = np.linspace(1, 1.5 * PI, 2001)
    sq = make_squeezed_coherent(SqueezeParams(23.2, 0.0, 0.96, 0.0))
    co = make_coherent(10.0)
    assert half_swing(time_trace(CFG, sq, 0.0, t)) > half_swing(time_trace(CFG, co, 0.0, t))


def test_pattern_metadata_and_zero_time():
    s = make_coherent(4.0)
    grid = wavelength_grid(128)
    p = quantum_pattern(CFG, s, 0.0, grid)
    assert np.all(p.pe == 0)
    p = quantum_pattern(CFG, s, 0.5, grid)
    assert p.pulse_area == pytest.approx(0.5 * 4.0, rel=1e-12)
    assert p.classical_area == pytest.approx(2 * p.pulse_area)


def test_large_alpha_matches_classical_fringes():
    from rabipattern import count_peaks

    alpha = 20.0
    p = quantum_pattern(CFG, make_coherent(alpha), 4 * PI / alpha, wavelength_grid(4096))
    c = classical_pattern(ClassicalDrive(p.classical_area), 1.0, p.positions)
    assert count_peaks(p, 0.1) == count_peaks(c, 0.1) == 16


def test_alpha10_degrades_more_at_antinodes():
    grid = wavelength_grid(4096)
    p = quantum_pattern(CFG, make_coherent(10.0), 4 * PI / 10.0, grid)
    c = classical_pattern(ClassicalDrive(p.classical_area), 1.0, grid)
    amp = np.abs(np.cos(2 * PI * grid))
    d = (p.pe - c.pe) ** 2
    assert math.sqrt(d[amp > 0.7].mean()) > 2 * math.sqrt(d[amp < 0.3].mean())


def test_classical_limit_converges():
    grid = wavelength_grid(2001)
    dist = []
    for alpha in (20.0, 100.0, 500.0):
        p = quantum_pattern(CFG, make_coherent(alpha), 4 * PI / alpha, grid)
        c = classical_pe(ClassicalDrive(p.classical_area), grid, 1.0)
        dist.append(float(np.max(np.abs(p.pe - c))))
    assert dist[0] >= dist[1] >= dist[2]
    assert dist[2] < 0.05


def test_collapse_revival_examples():
    cr = collapse_revival_times(CFG, 10.0, 0.0)
    assert cr.t_collapse == pytest.approx(0.5)
    assert cr.t_revival == pytest.approx(20 * PI)
    assert collapse_revival_times(DriveConfig(g=2.0), 10.0, 0.0).t_collapse == pytest.approx(0.25)
    cr = collapse_revival_times(CFG, 10.0, 1 / 6, m=2)  # kx = pi/3
    assert cr.t_collapse == pytest.approx(1.0)
    assert cr.t_revival == pytest.approx(80 * PI)


def test_collapse_at_node_raises():
    with pytest.raises(NodePosition):
        collapse_revival_times(CFG, 10.0, 0.25)
    with pytest.raises(ValueError):
        collapse_revival_times(CFG, 10.0, 0.0, m=0)


def test_full_state_examples():
    s = make_coherent(3.0)
    j = full_state(CFG, s, 0.1, 0.0)
    np.testing.assert_array_equal(j.ground, s.coeffs)
    assert np.all(j.excited == 0)
    j = full_state(CFG, FieldState.fock(1), 0.0, PI / 2)
    assert abs(j.ground[1]) < 1e-15
    assert j.excited[0] == pytest.approx(1j, abs=1e-15)
    j = full_state(CFG, make_coherent(5.0), 1 / (2 * PI), 7.3)
    assert abs(j.total_probability - 1.0) <= 1e-10


def _states():
    return st.one_of(
        st.builds(lambda a, ph: make_coherent(a, ph), st.floats(0.0, 15.0), st.floats(0.0, 6.28)),
        st.builds(
            lambda b, r, th: make_squeezed_coherent(SqueezeParams(b, 0.0, r, th)),
            st.floats(0.0, 12.0),
            st.floats(0.0, 1.0),
            st.floats(0.0, 6.28),
        ),
    )


@settings(max_examples=40, deadline=None)
@given(s=_states(), x=st.floats(-1.0, 1.0), t=st.floats(0.0, 40.0))
def test_unitarity_and_consistency(s, x, t):
    j = full_state(CFG, s, x, t)
    assert abs(j.total_probability - 1.0) <= 1e-10
    assert abs(quantum_pe(CFG, s, x, t) - j.excited_probability) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(s=_states(), t=st.floats(0.0, 100.0))
def test_nodes_are_exactly_dark(s, t):
    assert quantum_pe(CFG, s, 0.25, t) == 0.0
    assert quantum_pe(CFG, s, -0.75, t) == 0.0


@settings(max_examples=30, deadline=None)
@given(s=_states(), x=st.floats(0.0, 1.0), t=st.floats(0.0, 20.0))
def test_depends_on_gt_only(s, x, t):
    a = quantum_pe(DriveConfig(g=1.0), s, x, t)
    b = quantum_pe(DriveConfig(g=2.0), s, x, t / 2)
    assert abs(a - b) <= 1e-14
