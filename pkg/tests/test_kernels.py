import math
import os
import subprocess
import sys

import numpy as np
import pytest

from rabipattern import DriveConfig, SqueezeParams, make_coherent, make_squeezed_coherent, quantum_pattern, wavelength_grid
from rabipattern import kernels

compiled = pytest.mark.skipif(kernels._compiled is None, reason="compiled kernel not built")


def _inputs(seed=0):
    rng = np.random.default_rng(seed)
    w = np.sort(rng.random(300))[::-1].copy()
    w /= w.sum()
    q = np.sqrt(rng.integers(1, 2000, size=300).astype(float))
    area = rng.uniform(-30, 30, size=1000)
    area[:5] = 0.0
    return w, q, area


def test_python_kernel_matches_direct_sum():
    w, q, area = _inputs()
    ref = np.array([math.fsum(w * np.sin(a * q) ** 2) for a in area])
    got = kernels.get_kernel("python")(w, q, area)
    np.testing.assert_allclose(got, ref, rtol=0, atol=1e-14)


@compiled
def test_compiled_matches_python():
    w, q, area = _inputs(1)
    a = kernels.get_kernel("compiled")(w, q, area)
    b = kernels.get_kernel("python")(w, q, area)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)


@compiled
def test_backends_agree_on_patterns():
    cfg = DriveConfig()
    grid = wavelength_grid(1024)
    s = make_squeezed_coherent(SqueezeParams(23.2, 0.0, 0.96, 0.0))
    a = quantum_pattern(cfg, s, 1.5 * math.pi, grid, backend="compiled").pe
    b = quantum_pattern(cfg, s, 1.5 * math.pi, grid, backend="python").pe
    assert np.max(np.abs(a - b)) <= 1e-12


@pytest.mark.parametrize("threads", [2, 3, "auto"])
def test_thread_count_does_not_change_bits(threads):
    cfg = DriveConfig()
    grid = wavelength_grid(3000)
    s = make_coherent(10.0)
    a = quantum_pattern(cfg, s, 1.5 * math.pi, grid, threads=1).pe
    b = quantum_pattern(cfg, s, 1.5 * math.pi, grid, threads=threads).pe
    assert a.tobytes() == b.tobytes()


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_kernel("fortran")
    with pytest.raises(ValueError):
        kernels.resolve_threads(0)


def test_env_var_forces_fallback():
    env = dict(os.environ, RABIPATTERN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import rabipattern; print(rabipattern.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_cospi_exact_values():
    assert kernels.standing_wave(0.25) == 0.0
    assert kernels.standing_wave(0.75) == 0.0
    assert kernels.standing_wave(-1.25) == 0.0
    assert kernels.standing_wave(0.5) == -1.0
    assert kernels.standing_wave(3.0) == 1.0
    x = np.linspace(-2, 2, 1001)
    np.testing.assert_allclose(kernels.standing_wave(x), np.cos(2 * math.pi * x), atol=1e-15)
