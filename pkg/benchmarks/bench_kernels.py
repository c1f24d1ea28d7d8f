"""Benchmark the numba kernels against the pure-numpy fallback.

Run directly::

    python benchmarks/bench_kernels.py

The active path is whatever ``tspvqe.kernels`` selected at import (numba when
available and TSPVQE_NO_NUMBA is unset); the numpy implementations are timed
explicitly for comparison.
"""

import time

import numpy as np

from tspvqe import kernels
from tspvqe.kernels import (
    _apply_ansatz_numpy,
    _bit_energies_numpy,
    _spin_energies_numpy,
)


def _time(fn, *args, repeat=5):
    fn(*args)  # warm-up (and JIT compile, for the numba path)
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def random_quadratic_form(rng, n, coupling_density=0.3):
    lin_idx = np.arange(n, dtype=np.int64)
    lin_val = rng.integers(-50, 50, size=n).astype(np.int64)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    take = rng.random(len(pairs)) < coupling_density
    qi = np.array([p[0] for p, t in zip(pairs, take) if t], dtype=np.int64)
    qj = np.array([p[1] for p, t in zip(pairs, take) if t], dtype=np.int64)
    qval = rng.integers(-50, 50, size=len(qi)).astype(np.int64)
    return 7, lin_idx, lin_val, qi, qj, qval


def bench_enumeration():
    rng = np.random.default_rng(0)
    print(f"{'enumeration':<28}{'numba' if kernels.HAVE_NUMBA else 'active':>12}"
          f"{'numpy':>12}{'speedup':>10}")
    for n in (16, 20, 22):
        form = random_quadratic_form(rng, n)
        t_active = _time(kernels.enumerate_bit_energies, n, *form, repeat=3)
        t_numpy = _time(_bit_energies_numpy, n, *form, repeat=3)
        print(f"  bits  n={n:<4}({len(form[3]):>4} terms)"
              f"{t_active * 1e3:>11.1f}ms{t_numpy * 1e3:>10.1f}ms"
              f"{t_numpy / t_active:>9.1f}x")
        t_active = _time(kernels.enumerate_spin_energies, n, *form, repeat=3)
        t_numpy = _time(_spin_energies_numpy, n, *form, repeat=3)
        print(f"  spins n={n:<4}({len(form[3]):>4} terms)"
              f"{t_active * 1e3:>11.1f}ms{t_numpy * 1e3:>10.1f}ms"
              f"{t_numpy / t_active:>9.1f}x")


def bench_ansatz():
    rng = np.random.default_rng(1)
    print(f"\n{'ansatz application':<28}{'numba' if kernels.HAVE_NUMBA else 'active':>12}"
          f"{'numpy':>12}{'speedup':>10}")
    for n, layers in ((9, 2), (12, 2), (14, 3)):
        n_par = layers * (2 * n + n - 1) + 2 * n
        params = rng.uniform(-np.pi, np.pi, n_par)
        psi0 = np.zeros(1 << n, dtype=np.complex128)
        psi0[0] = 1.0
        t_active = _time(kernels.apply_ansatz_amplitudes, psi0, n, layers, False, params)
        t_numpy = _time(_apply_ansatz_numpy, psi0, n, layers, False, params)
        print(f"  n={n:<2} L={layers} ({n_par:>3} params)  "
              f"{t_active * 1e6:>10.0f}us{t_numpy * 1e6:>10.0f}us"
              f"{t_numpy / t_active:>9.1f}x")


if __name__ == "__main__":
    print(f"numba active: {kernels.HAVE_NUMBA}")
    bench_enumeration()
    bench_ansatz()
