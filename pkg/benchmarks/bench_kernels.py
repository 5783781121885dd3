#!/usr/bin/env python3
"""Benchmark the mod-p kernels: numba @njit loops vs the numpy fallback.

Times raw rref/matmul on random residue matrices, then an end-to-end
class computation over a batch of random commuting tuples with each
backend patched in.  Run after installing the package:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 50 100 200 --prime 97
"""

import argparse
import random
import time

import numpy as np

from endok import _kernels
from endok.bruteforce import random_commuting_tuple
from endok.fields import GF
from endok.ktheory import k0_class

BACKENDS = ["numba", "numpy"] if _kernels.HAVE_NUMBA else ["numpy"]

IMPLS = {
    "numpy": (_kernels.matmul_mod_numpy, _kernels.rref_mod_numpy),
    "numba": (_kernels.matmul_mod_numba, _kernels.rref_mod_numba),
}


def bench_kernels(sizes, p, repeats):
    rng = np.random.default_rng(0)
    print(f"\nraw kernels mod {p} (best of {repeats}, seconds)")
    print(f"{'size':>6} | {'op':>6} | " + " | ".join(f"{b:>10}" for b in BACKENDS))
    for n in sizes:
        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        b = rng.integers(0, p, size=(n, n), dtype=np.int64)
        for op in ("matmul", "rref"):
            times = []
            for backend in BACKENDS:
                matmul, rref = IMPLS[backend]
                fn = (lambda: matmul(a, b, p)) if op == "matmul" else (lambda: rref(a, p))
                fn()  # warm up (jit compile on first call)
                best = min(
                    _timed(fn) for _ in range(repeats)
                )
                times.append(best)
            row = " | ".join(f"{t:10.5f}" for t in times)
            print(f"{n:>6} | {op:>6} | {row}")


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def bench_end_to_end(p, count, dim, repeats):
    """Class computation over a batch of random tuples per backend.
    The 'python' row disables the array path entirely (generic exact loop)."""
    field = GF(p)
    rng = random.Random(0)
    tuples = [
        random_commuting_tuple(field, 2, rng.randint(2, dim), rng) for _ in range(count)
    ]
    print(f"\nk0 classes of {count} random pairs mod {p}, dim <= {dim} (seconds)")
    saved = (_kernels.BACKEND, _kernels.matmul_mod, _kernels.rref_mod)
    try:
        for backend in BACKENDS + ["python"]:
            if backend != "python":
                _kernels.matmul_mod, _kernels.rref_mod = IMPLS[backend]
            _kernels.BACKEND = backend
            best = None
            for _ in range(repeats):
                t0 = time.perf_counter()
                for t in tuples:
                    k0_class(t, random.Random(0))
                dt = time.perf_counter() - t0
                best = dt if best is None else min(best, dt)
            print(f"{backend:>8}: {best:.3f}")
    finally:
        _kernels.BACKEND, _kernels.matmul_mod, _kernels.rref_mod = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    ap.add_argument("--prime", type=int, default=97)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--tuples", type=int, default=40)
    ap.add_argument("--dim", type=int, default=6)
    args = ap.parse_args()
    print(f"available backends: {', '.join(BACKENDS)}")
    bench_kernels(args.sizes, args.prime, args.repeats)
    bench_end_to_end(args.prime, args.tuples, args.dim, args.repeats)


if __name__ == "__main__":
    main()
