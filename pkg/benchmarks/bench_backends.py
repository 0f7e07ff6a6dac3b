"""Time the hot kernels on every importable backend.

Usage: python benchmarks/bench_backends.py [--repeat N]

Each workload matches what the quadrature layer actually asks for: a few
hundred abscissae per call, called thousands of times per verification
sweep. Reported numbers are best-of-N milliseconds per call.
"""

import argparse
import math
import time

import numpy as np

from realzeros._backend import available_backends


def _best(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1e3


def workloads():
    us = np.linspace(0.0, 3.0, 257)
    return [
        (
            "kbessel_sum (n=400)",
            lambda m: m.kbessel_sum(2.0, -2.25, 5.0, 0.0, 0.01, 400),
        ),
        (
            "coshw_sum (n=600)",
            lambda m: m.coshw_sum(
                16.0 * math.pi**2, 24.0 * math.pi, 4.5, 2.5, 2.0,
                2.0 * math.pi, 14.0, 0.5, 0.0, 0.008, 600,
            ),
        ),
        (
            "phi_sum (n=500)",
            lambda m: m.phi_sum(14.0, 0.4, 0.0, 0.01, 500, 60),
        ),
        (
            "phi_values (257 pts)",
            lambda m: m.phi_values(us, 60),
        ),
        (
            "hyp2f1_series (w=0.45)",
            lambda m: m.hyp2f1_series(3.5, 3.5, 2.0, 0.45, 1e-15, 6000, 8),
        ),
        (
            "f_series_sums (t=0.2)",
            lambda m: m.f_series_sums(0.2, 1.7, 1e-15, 40000),
        ),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ns = ap.parse_args()

    backends = available_backends()
    names = sorted(backends)
    header = "%-24s" % "workload" + "".join("%14s" % n for n in names)
    if len(names) > 1:
        header += "%10s" % "speedup"
    print(header)
    print("-" * len(header))
    for label, call in workloads():
        times = {n: _best(lambda m=backends[n]: call(m), ns.repeat) for n in names}
        row = "%-24s" % label + "".join("%12.4fms" % times[n] for n in names)
        if "python" in times and "cython" in times and times["cython"] > 0:
            row += "%9.1fx" % (times["python"] / times["cython"])
        print(row)


if __name__ == "__main__":
    main()
