"""Compare the compiled and pure-Python kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Each workload is
timed under every available backend and the results must agree.
"""
from __future__ import annotations

import argparse
import random
import time

from homlie import _kernels
from homlie.connection import (
    build_G,
    connection_product,
    ideal_closure,
    multiplication_algebra_dim_exact,
    multiplication_algebra_dim_modp,
)
from homlie.construct import build_alpha, build_mu, compute_hk
from homlie.lie import Subspace
from homlie.linalg import unit
from homlie.zoo import example_bundle


def random_int_rows(seed: int, nrows: int, ncols: int, bound: int = 20) -> list:
    rng = random.Random(seed)
    return [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)]


def example_G():
    b = example_bundle()
    pair = compute_hk(b)
    mu = build_mu(b, pair)
    conn = connection_product(b.g, b.B, build_alpha(b, pair, mu))
    return build_G(b.g, b.B, conn, mu).base


def workloads():
    G = example_G()
    mats = [random_int_rows(s, 40, 40) for s in range(5)]
    return {
        "rref_int 40x40 x5": lambda: [_kernels.rref_int(m, 40)[1] for m in mats],
        "Mult(G) mod p": lambda: multiplication_algebra_dim_modp(G),
        "Mult(G) exact": lambda: multiplication_algebra_dim_exact(G),
        "ideal closure x50": lambda: [ideal_closure(G, Subspace(G.dim, (unit(G.dim, 1 + i % 9),))).dim
                                      for i in range(50)],
    }


def timeit(fn, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = list(_kernels.available_backends())
    jobs = workloads()
    print(f"{'workload':24}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in jobs.items():
        times, results = [], []
        for b in backends:
            with _kernels.use_backend(b):
                t, r = timeit(fn, args.repeat)
            times.append(t)
            results.append(r)
        if any(r != results[0] for r in results):
            raise SystemExit(f"backends disagree on {name}")
        speed = f"{times[0] / times[-1]:.1f}x" if len(times) > 1 else "-"
        print(f"{name:24}" + "".join(f"{t * 1000:10.1f}ms" for t in times) + f"{speed:>10}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
