"""Timing of the compiled kernels against the numpy fallback.

Run ``python3 benchmarks/bench_kernels.py [--size N] [--repeat R]``.
Each line reports the best wall time per backend, the speed-up and the
largest difference between the two outputs.
"""

import argparse
import time

import numpy as np

from edgenet.integrable_frames import cmc_transitions, perturbed_vacuum_field, propagate_frames
from edgenet.kernels import get_backend
from edgenet.kfamily import knet_gauss_map, pseudosphere_cauchy
from edgenet.netcore import sample_analytic


def best_time(fn, repeat):
    out, best = None, np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def max_diff(a, b):
    if isinstance(a, tuple):
        return max(max_diff(x, y) for x, y in zip(a, b))
    a, b = np.asarray(a, float), np.asarray(b, float)
    m = np.isfinite(a) & np.isfinite(b)
    return float(np.abs(a[m] - b[m]).max(initial=0.0))


def cases(size):
    net = sample_analytic("torus", size, size, 2 * np.pi / size)
    fq, nq = net.quad_positions(), net.quad_normals()
    E = net.graph.edges
    field = perturbed_vacuum_field(min(size, 12), min(size, 12))
    U, V, dU, dV = cmc_transitions(field, 0.4)
    cauchy = pseudosphere_cauchy(size, size)
    return {
        "quad_core": lambda b: get_backend(b).quad_core(fq, nq, np.eye(2), 1e-8),
        "edge_residuals": lambda b: get_backend(b).edge_residuals(net.positions, net.normals, E),
        "frame_propagate": lambda b: propagate_frames(U, V, dU, dV, backend=b),
        "moutard_fill": lambda b: knet_gauss_map(cauchy, backend=b),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--size", type=int, default=40)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    print(f"{'kernel':<16}{'python [ms]':>12}{'cython [ms]':>12}{'speed-up':>10}{'max diff':>11}")
    for name, fn in cases(args.size).items():
        tp, op = best_time(lambda: fn("python"), args.repeat)
        tc, oc = best_time(lambda: fn("cython"), args.repeat)
        print(f"{name:<16}{1e3 * tp:12.3f}{1e3 * tc:12.3f}{tp / tc:10.1f}{max_diff(op, oc):11.1e}")


if __name__ == "__main__":
    main()
