"""Timing comparison of the two Wick-enumeration kernels.

Runs the loop-count histogram for a few moment shapes on both the
compiled (numba) kernel and the vectorised numpy fallback, checks they
agree, and prints a small table.  The compiled kernel pays a one-time
JIT cost on its first shape; a warm-up run is timed separately.

    python benchmarks/bench_wick.py            # default shapes
    python benchmarks/bench_wick.py --heavy    # adds the 16-half-edge shape
"""

import argparse
import time

from cubicmaps.oracle.wick import (
    _first_pair_tasks,
    _hist_numba,
    _hist_numpy,
    _slots,
    active_backend,
)

SHAPES = [
    (3, 3),
    (3, 3, 3, 3),
    (2, 2, 2, 2, 2, 2),
    (3, 3, 3, 3, 1, 1),
]
HEAVY = (3, 3, 3, 3, 2, 2)  # 16 half-edges


def run(ks, backend):
    n = sum(ks)
    xs, ys = _slots(ks)
    tasks = _first_pair_tasks(ks, True)
    fn = _hist_numba if backend == "numba" else _hist_numpy
    t0 = time.perf_counter()
    hist = fn(xs, ys, tasks, n)
    return time.perf_counter() - t0, list(hist)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--heavy", action="store_true", help="include a 16-half-edge shape")
    args = ap.parse_args()

    shapes = SHAPES + ([HEAVY] if args.heavy else [])
    print("default backend:", active_backend())

    # JIT warm-up so the first row is not dominated by compilation
    t_warm, _ = run((2,), "numba")
    print("numba warm-up (compile): %.2fs" % t_warm)

    print("%-22s %12s %12s %8s" % ("shape", "numba [s]", "numpy [s]", "speedup"))
    for ks in shapes:
        t_nb, h_nb = run(ks, "numba")
        t_np, h_np = run(ks, "numpy")
        assert h_nb == h_np, ("kernel mismatch", ks)
        print(
            "%-22s %12.4f %12.4f %7.1fx"
            % ("{" + ",".join(map(str, ks)) + "}", t_nb, t_np, t_np / t_nb if t_nb else float("inf"))
        )


if __name__ == "__main__":
    main()
