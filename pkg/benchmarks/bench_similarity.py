"""Compare the numba and numpy similarity backends on random matrices.

Usage: python benchmarks/bench_similarity.py [--users 2000] [--items 200]
"""

import argparse
import time

import numpy as np

from reqgrid import kernels


def make_inputs(rng, n_users, n_items, density):
    ratings = rng.integers(1, 6, size=(n_users, n_items)).astype(np.float64)
    mask = rng.random((n_users, n_items)) < density
    ratings[~mask] = 0.0
    return ratings, mask


def bench(backend, ratings, mask, repeats):
    # warm-up (includes JIT compilation for the numba path)
    kernels.similarity_batch(ratings, mask, 0, backend=backend)
    started = time.perf_counter()
    for i in range(repeats):
        kernels.similarity_batch(ratings, mask, i % len(ratings), backend=backend)
    return (time.perf_counter() - started) / repeats


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--users", type=int, default=2000)
    parser.add_argument("--items", type=int, default=200)
    parser.add_argument("--density", type=float, default=0.5)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    ratings, mask = make_inputs(rng, args.users, args.items, args.density)

    v_np, c_np = kernels.similarity_batch(ratings, mask, 0, backend="numpy")
    v_nb, c_nb = kernels.similarity_batch(ratings, mask, 0, backend="numba")
    np.testing.assert_allclose(v_np, v_nb, atol=1e-12)
    np.testing.assert_array_equal(c_np, c_nb)
    print(f"backends agree on {args.users}x{args.items} (density {args.density})")

    for backend in ("numpy", "numba"):
        per_call = bench(backend, ratings, mask, args.repeats)
        print(f"{backend:>6}: {per_call * 1000:8.2f} ms per batch similarity call")


if __name__ == "__main__":
    main()
