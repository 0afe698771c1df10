"""Time the compiled and numpy excitation kernels on the figure workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--threads 1]
"""

import argparse
import math
import time

import numpy as np

from rabipattern import DriveConfig, SqueezeParams, make_coherent, make_squeezed_coherent, quantum_pattern, wavelength_grid
from rabipattern import kernels

CASES = {
    "coherent a=10, 4096 pts": (lambda: make_coherent(10.0), 1.5 * math.pi),
    "squeezed b=23.2, 4096 pts": (lambda: make_squeezed_coherent(SqueezeParams(23.2, 0.0, 0.96, 0.0)), 1.5 * math.pi),
    "squeezed b=99.9, 4096 pts": (lambda: make_squeezed_coherent(SqueezeParams(99.9, 0.0, 1.28, 0.0)), 0.54 * math.pi),
    "coherent a=500, 4096 pts": (lambda: make_coherent(500.0), 4 * math.pi / 500),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", default=1)
    args = ap.parse_args()
    backends = ["python"] + (["compiled"] if kernels._compiled is not None else [])
    cfg = DriveConfig()
    grid = wavelength_grid(4096)
    print(f"{'case':28s} {'terms':>7s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup  max|diff|")
    for name, (make, gt) in CASES.items():
        s = make()
        terms = s.support()[0].size
        res = {}
        for b in backends:
            res[b] = best_of(lambda: quantum_pattern(cfg, s, gt, grid, threads=args.threads, backend=b).pe, args.repeat)
        row = f"{name:28s} {terms:7d} " + " ".join(f"{res[b][0]:9.4f}s" for b in backends)
        if "compiled" in res:
            speed = res["python"][0] / res["compiled"][0]
            diff = float(np.max(np.abs(res["python"][1] - res["compiled"][1])))
            row += f"   {speed:6.1f}x  {diff:.1e}"
        print(row)


if __name__ == "__main__":
    main()
