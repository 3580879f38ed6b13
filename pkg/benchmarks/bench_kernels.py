"""Compare the compiled and numpy kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--n 200] [--repeat 5]
"""

import argparse
import math
import timeit

import numpy as np

from sasaki_annulus import kernels
from sasaki_annulus.optimizer import linear_profile
from sasaki_annulus.sphere import make_annulus


def bench(backend, nodes, thetas, repeat, descend_iters):
    out = {}
    for name, stmt, number in (
        ("discrete_area", lambda: backend.discrete_area(nodes, thetas), 2000),
        ("discrete_gradient", lambda: backend.discrete_gradient(nodes, thetas), 2000),
        ("descend", lambda: backend.descend(nodes, thetas, descend_iters, 0.0), 1),
    ):
        best = min(timeit.repeat(stmt, number=number, repeat=repeat)) / number
        out[name] = best
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--descend-iters", type=int, default=5000)
    args = p.parse_args(argv)

    P = linear_profile(make_annulus(math.pi / 4), args.n)
    results = {name: bench(mod, P.nodes, P.thetas, args.repeat, args.descend_iters)
               for name, mod in sorted(kernels.BACKENDS.items())}
    if "compiled" not in results:
        print("compiled extension not built; only the numpy backend is timed")
    print(f"n = {args.n}, descend runs {args.descend_iters} iterations")
    print(f"{'kernel':<20}" + "".join(f"{b:>14}" for b in results) + ("     speedup" if len(results) > 1 else ""))
    for kernel in ("discrete_area", "discrete_gradient", "descend"):
        row = [results[b][kernel] for b in results]
        line = f"{kernel:<20}" + "".join(f"{t * 1e6:>11.1f} us" for t in row)
        if len(row) > 1:
            line += f"{results['python'][kernel] / results['compiled'][kernel]:>11.1f}x"
        print(line)
    if len(results) > 1:
        # mid-run paths may split on a line-search decision; converged profiles must agree
        Q = linear_profile(make_annulus(math.pi / 4), 64)
        a = kernels.BACKENDS["compiled"].descend(Q.nodes, Q.thetas, 10**6, 1e-10)[0]
        b = kernels.BACKENDS["python"].descend(Q.nodes, Q.thetas, 10**6, 1e-10)[0]
        print(f"max |compiled - python| at convergence (n = 64): {np.max(np.abs(a - b)):.2e}")


if __name__ == "__main__":
    main()
