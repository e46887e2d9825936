"""Compare the compiled and pure-Python kernels on representative workloads.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import random
import timeit
from fractions import Fraction

from genmac import kernels
from genmac.liedata import current_algebra_data, kernel_factors
from genmac.rootsys import parse_root_system


def product_workloads():
    out = []
    for label, kind, trunc in [("A1", "poly_x_xi", (8, 4)), ("A2", "poly_x", (8, 0)),
                               ("A2", "poly_x_xi", (5, 3)), ("B2", "poly_x", (6, 0))]:
        data = current_algebra_data(parse_root_system(label), kind, trunc)
        out.append((f"kernel {data.name} {trunc}", kernel_factors(data), trunc))
    return out


def rank_workloads():
    rnd = random.Random(1)
    out = []
    for n in (30, 60, 100):
        rows = [[rnd.randint(-3, 3) if rnd.random() < 0.3 else 0 for _ in range(n)] for _ in range(n)]
        out.append((f"rank {n}x{n} integer", rows, n))
        half = [[Fraction(x, rnd.randint(1, 4)) for x in r] for r in rows]
        out.append((f"rank {n}x{n} rational", half, n))
    return out


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'workload':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, factors, (nq, nt) in product_workloads():
        times = {}
        results = {}
        for b in backends:
            results[b] = kernels.chain_product(factors, nq, nt, backend=b)
            times[b] = best(lambda b=b: kernels.chain_product(factors, nq, nt, backend=b), args.repeat)
        assert len({len(r) for r in results.values()}) == 1
        _row(name, backends, times)
    for name, rows, n in rank_workloads():
        times = {}
        for b in backends:
            times[b] = best(lambda b=b: kernels.rational_rank(rows, n, b), args.repeat)
        _row(name, backends, times)


def _row(name, backends, times):
    cells = " ".join(f"{times[b] * 1e3:8.2f}ms" for b in backends)
    speed = ""
    if "cython" in times:
        speed = f"{times['python'] / times['cython']:8.1f}x"
    print(f"{name:40s} {cells} {speed}")


if __name__ == "__main__":
    main()
