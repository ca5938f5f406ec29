"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py            # rank, rref, v=7 and a 10-root v=15 subtree
    python benchmarks/bench_kernels.py --full15   # also the whole v=15 search (compiled only)
"""
import argparse
import random
import statistics
import time

from blockgroup import kernels
from blockgroup._purepy import _rows_for_level


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        samples.append(time.perf_counter() - t)
    return statistics.median(samples), out


def matrices(count, rows, cols, seed=0):
    rng = random.Random(seed)
    return [[rng.getrandbits(cols) for _ in range(rows)] for _ in range(count)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full15", action="store_true")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    py, cy = kernels.purepy, kernels.compiled

    small = matrices(2000, 32, 32)
    wide = matrices(50, 200, 500, seed=1)
    first = list(_rows_for_level(15, 4, 0, [0] * 15, -1))[:10]
    cases = [
        ("rank 2000 x (32x32)", lambda b: [b.rank(m, 32) for m in small]),
        ("rref 2000 x (32x32)", lambda b: [b.rref(m, 32) for m in small]),
        ("rank 50 x (200x500)", lambda b: [b.rank(m, 500) for m in wide]),
        ("search v=7", lambda b: b.search(7, 3)["leaves"]),
        ("search v=15, 10 roots", lambda b: b.search(15, 4, first)["leaves"]),
    ]
    print(f"{'kernel':28s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, fn in cases:
        tp, op = timed(lambda: fn(py), args.repeat)
        tc, oc = timed(lambda: fn(cy), args.repeat)
        assert op == oc, label
        print(f"{label:28s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")

    if args.full15:
        t = time.perf_counter()
        res = cy.search(15, 4)
        print(f"full v=15 search (compiled): {time.perf_counter() - t:.1f}s, "
              f"{res['nodes']} nodes, {res['leaves']} closed sets")


if __name__ == "__main__":
    main()
