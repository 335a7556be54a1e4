#!/usr/bin/env python3
"""Time the compiled kernels against the pure NumPy fallback.

Runs both backends on the same inputs (the compiled extension via the
scarfcs.kernels facade, the fallback via scarfcs._kernels_py directly),
checks they agree, and prints best-of-N wall times. Run with
SCARFCS_NO_EXT unset so the compiled backend actually loads:

    python benchmarks/bench_kernels.py
"""

import argparse
import time

import numpy as np

from scarfcs import _kernels_py, kernels


def best_of(repeats, fn):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi(n_max, n_x, repeats):
    x = np.linspace(-1.0, 1.0, n_x)
    out = np.empty((n_max + 1, n_x))

    compiled = best_of(repeats, lambda: kernels.jacobi_table(n_max, 0.6, 22.4, x))
    fallback = best_of(repeats,
                       lambda: _kernels_py.jacobi_table(n_max, 0.6, 22.4, x, out))

    ref = kernels.jacobi_table(n_max, 0.6, 22.4, x)
    _kernels_py.jacobi_table(n_max, 0.6, 22.4, x, out)
    scale = np.max(np.abs(out))
    agree = float(np.max(np.abs(ref - out))) / scale
    return compiled, fallback, agree


def bench_carpet(n_levels, n_x, n_t, repeats):
    rng = np.random.default_rng(0)
    coeff = rng.normal(size=n_levels) + 1j * rng.normal(size=n_levels)
    coeff /= np.linalg.norm(coeff)
    energies = (np.arange(n_levels) + 12.0) ** 2
    psi = rng.normal(size=(n_levels, n_x))
    times = np.linspace(0.0, 2.0 * np.pi, n_t)
    out = np.empty((n_t, n_x))

    compiled = best_of(repeats,
                       lambda: kernels.carpet_densities(coeff, energies, psi, times))
    fallback = best_of(repeats,
                       lambda: _kernels_py.carpet_densities(coeff, energies, psi,
                                                            times, out))

    ref = kernels.carpet_densities(coeff, energies, psi, times)
    _kernels_py.carpet_densities(coeff, energies, psi, times, out)
    agree = float(np.max(np.abs(ref - out))) / float(np.max(out))
    return compiled, fallback, agree


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--n-max", type=int, default=60, help="Jacobi table depth")
    ap.add_argument("--n-x", type=int, default=2000, help="spatial points")
    ap.add_argument("--n-levels", type=int, default=24, help="carpet levels")
    ap.add_argument("--n-t", type=int, default=400, help="carpet time slices")
    args = ap.parse_args()

    active = kernels.backend()
    print(f"active backend: {active}")
    if active != "compiled":
        print("note: compiled extension not loaded; timing fallback "
              "against itself (set SCARFCS_NO_EXT= and reinstall to "
              "compare for real)")

    rows = []
    c, f, agree = bench_jacobi(args.n_max, args.n_x, args.repeats)
    rows.append((f"jacobi_table({args.n_max}x{args.n_x})", c, f, agree))
    c, f, agree = bench_carpet(args.n_levels, args.n_x, args.n_t, args.repeats)
    rows.append((f"carpet({args.n_levels} levels, {args.n_t}x{args.n_x})",
                 c, f, agree))

    print(f"{'kernel':<36} {'active':>10} {'fallback':>10} "
          f"{'speedup':>8} {'max rel diff':>13}")
    for name, c, f, agree in rows:
        print(f"{name:<36} {c * 1e3:>8.2f}ms {f * 1e3:>8.2f}ms "
              f"{f / c:>7.1f}x {agree:>13.2e}")


if __name__ == "__main__":
    main()
