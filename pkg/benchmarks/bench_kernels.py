"""Compare the numba and fallback builds of the two hot kernels.

    python benchmarks/bench_kernels.py [--max-nm 10] [--max-coeff 1000] [--repeat 3]

Also times the exact lattice solver that the search uses by default, for
scale.  The first numba call per kernel is reported separately because it
includes JIT compilation.
"""

import argparse
import time
from fractions import Fraction

from cfintegrals import kernels
from cfintegrals.pi_analog import _integer_rows, solve_lattice


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-nm", type=int, default=10)
    parser.add_argument("--max-coeff", type=int, default=1000)
    parser.add_argument("--target", default="22/7")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    target = Fraction(args.target)
    rows = [_integer_rows(n, m, target)[:2] for n in range(args.max_nm + 1) for m in range(args.max_nm + 1)]
    rows = [r for r in rows if kernels.scan_fits_int64(*r, args.max_coeff)]
    cells = len(rows)
    print(f"grid scan: {cells} (n, m) cells, coefficients 0..{args.max_coeff}")

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    if "numba" in backends:
        start = time.perf_counter()
        kernels.scan_grid([1, -1, 0], [0, 1, -1], 2, backend="numba")
        print(f"  numba first call (compile): {time.perf_counter() - start:8.3f} s")

    counts = {}
    for backend in backends:
        elapsed, counts[backend] = best_of(
            lambda: sum(len(kernels.scan_grid(a, b, args.max_coeff, backend)) for a, b in rows), args.repeat
        )
        print(f"  {backend:<7} {elapsed:8.3f} s   {counts[backend]} solutions")
    elapsed, n_lattice = best_of(lambda: sum(len(solve_lattice(a, b, args.max_coeff)) for a, b in rows), args.repeat)
    print(f"  lattice {elapsed:8.3f} s   {n_lattice} solutions")
    assert len(set(counts.values()) | {n_lattice}) == 1, "backends disagree"

    print("adaptive Simpson, 121 integrals I(n, m), n, m <= 10, tol 1e-12:")
    if "numba" in backends:
        start = time.perf_counter()
        kernels.adaptive_simpson(1, 1, backend="numba")
        print(f"  numba first call (compile): {time.perf_counter() - start:8.3f} s")
    values = {}
    for backend in backends:
        elapsed, values[backend] = best_of(
            lambda: [kernels.adaptive_simpson(n, m, tol=1e-12, backend=backend) for n in range(11) for m in range(11)],
            args.repeat,
        )
        print(f"  {backend:<7} {elapsed:8.3f} s")
    if len(values) == 2:
        diff = max(abs(x - y) for x, y in zip(values["numpy"], values["numba"]))
        print(f"  max |numba - fallback| = {diff:.2e}")


if __name__ == "__main__":
    main()
