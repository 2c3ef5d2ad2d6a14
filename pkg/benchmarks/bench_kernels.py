"""Compare the compiled bitset kernels against the pure-Python fallback.

Runs each kernel on identical random workloads and prints per-call
timings plus the speedup.  Usage: python benchmarks/bench_kernels.py
"""

import random
import time

from topstruct.graph import random_graph
from topstruct._kernels import pure

try:
    from topstruct._kernels import _fast
except ImportError:
    _fast = None


def make_workload(n, p, cases, seed):
    rng = random.Random(seed)
    g = random_graph(n, p, rng)
    adj = list(g._adj)
    full = g.vertex_mask
    work = []
    for _ in range(cases):
        allowed = full & rng.getrandbits(n + 1) | 0
        start = 1 << rng.randint(1, n)
        u, v = rng.sample(range(1, n + 1), 2)
        work.append((start, allowed, 1 << u, 1 << v))
    return adj, full, work


def bench(impl, adj, n, full, work, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for start, allowed, src, dst in work:
            impl.reachable(adj, start, allowed | start)
            impl.components(adj, allowed)
            impl.is_connected(adj, allowed)
            impl.max_disjoint_paths(adj, n, src, dst, full & ~(src | dst))
    return (time.perf_counter() - t0) / (repeat * len(work))


def main():
    print(f"compiled extension available: {_fast is not None}")
    for n, p in [(12, 0.4), (24, 0.3), (48, 0.15), (63, 0.1)]:
        adj, full, work = make_workload(n, p, cases=60, seed=n)
        repeat = max(1, 600 // n)
        t_pure = bench(pure, adj, n, full, work, repeat)
        line = f"n={n:3d} p={p:.2f}  pure {t_pure * 1e6:9.2f} us/case"
        if _fast is not None:
            t_fast = bench(_fast, adj, n, full, work, repeat)
            line += (
                f"  compiled {t_fast * 1e6:9.2f} us/case"
                f"  speedup {t_pure / t_fast:5.1f}x"
            )
        print(line)


if __name__ == "__main__":
    main()
