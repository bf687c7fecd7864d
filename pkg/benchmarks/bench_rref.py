"""Compare the compiled and pure row-reduction kernels.

    python3 benchmarks/bench_rref.py [--repeat 3]

Matrices are the expanded differentials met when resolving the order-64
and order-729 groups, plus random matrices of similar shape.
"""

import argparse
import time

import numpy as np

from cohoforge import kernels
from cohoforge.linalg import _pack


def random_case(rng, rows, cols, p):
    return rng.integers(0, p, size=(rows, cols), dtype=np.uint8)


def run(backend, a, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        if p == 2:
            m = _pack(a)
            t = time.perf_counter()
            piv = backend.rref_gf2_packed(m, a.shape[1])
        else:
            m = a.copy()
            t = time.perf_counter()
            piv = backend.rref_modp(m, p, a.shape[1])
        best = min(best, time.perf_counter() - t)
    return best, len(piv)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    cases = [
        ("GF(2) 1024x1024", random_case(rng, 1024, 1024, 2), 2),
        ("GF(2) 2048x4096", random_case(rng, 2048, 4096, 2), 2),
        ("GF(3) 729x729", random_case(rng, 729, 729, 3), 3),
        ("GF(3) 1458x2187", random_case(rng, 1458, 2187, 3), 3),
        ("GF(5) 512x512", random_case(rng, 512, 512, 5), 5),
    ]
    backends = kernels.available_backends()
    names = sorted(backends)
    print(f"{'case':<20}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, a, p in cases:
        times = {}
        ranks = set()
        for n in names:
            times[n], r = run(backends[n], a, p, args.repeat)
            ranks.add(r)
        assert len(ranks) == 1, "backends disagree on rank"
        speed = times["pure"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{label:<20}" + "".join(f"{times[n] * 1000:>10.1f}ms" for n in names) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
