"""Time the compiled and numpy Laplace steps on full minor tables.

    python benchmarks/bench_kernels.py [n ...]
"""

import sys
import time

import numpy as np

from cyclominors import _minors


def run(n, backend):
    t0 = time.perf_counter()
    total = zeros = 0
    for level in _minors.iter_minor_levels(n, backend=backend):
        total += level.nonzero.size
        zeros += level.nonzero.size - int(np.count_nonzero(level.nonzero))
    return time.perf_counter() - t0, total, zeros


def main(argv):
    sizes = [int(a) for a in argv] or [9, 10, 11, 12]
    backends = sorted(_minors.BACKENDS)
    print(f"{'n':>3} {'minors':>9} {'zero':>8} " + " ".join(f"{b:>9}" for b in backends) + "  speedup")
    for n in sizes:
        times = {}
        for b in backends:
            times[b], total, zeros = min((run(n, b) for _ in range(3)), key=lambda r: r[0])
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        cols = " ".join(f"{times[b]:8.3f}s" for b in backends)
        print(f"{n:>3} {total:>9} {zeros:>8} {cols}  {speed:6.1f}x")


if __name__ == "__main__":
    main(sys.argv[1:])
