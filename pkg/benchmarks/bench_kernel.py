"""Compare the compiled and pure-Python clique kernels.

Runs the same lexicographic k-clique searches on seeded random graphs with
both kernels, asserts identical answers, and prints per-kernel timings.

Usage: python benchmarks/bench_kernel.py [--vertices N] [--graphs M] [--seed S]
"""

import argparse
import random
import time

from crossfree import _cliquepy

try:
    from crossfree import _cliquec
except ImportError:
    _cliquec = None


def make_graphs(rng, count, n):
    graphs = []
    for _ in range(count):
        p = 0.2 + 0.5 * rng.random()
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        graphs.append((adj, rng.randrange(3, 9)))
    return graphs


def run(kernel, graphs):
    start = time.perf_counter()
    results = [kernel.find_k_clique(adj, k) for adj, k in graphs]
    return time.perf_counter() - start, results


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--vertices", type=int, default=160)
    parser.add_argument("--graphs", type=int, default=400)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    graphs = make_graphs(random.Random(args.seed), args.graphs, args.vertices)
    py_time, py_results = run(_cliquepy, graphs)
    print(f"python kernel: {py_time:.3f}s for {args.graphs} graphs of {args.vertices} vertices")
    if _cliquec is None:
        print("compiled kernel not built; nothing to compare")
        return
    c_time, c_results = run(_cliquec, graphs)
    print(f"compiled kernel: {c_time:.3f}s")
    assert py_results == c_results, "kernels disagree"
    print(f"identical results; speedup x{py_time / c_time:.1f}")


if __name__ == "__main__":
    main()
