#!/usr/bin/env python3
"""Time every hot kernel under the numba and numpy backends.

    python3 benchmarks/bench_backends.py [--repeat 5] [--scale 1.0]

Each kernel is warmed up once (JIT compilation) before timing, and the two
backends' outputs are compared so a speedup never hides a wrong answer.
"""

import argparse
import math
import time

import numpy as np

from gensinc import _hot

PI = math.pi


def cases(scale, rng):
    n_t = int(200_000 * scale)
    b = random_coeffs(64, rng)
    t = rng.uniform(-200, 200, n_t)
    rows = int(2_000 * scale)
    window = 201
    idx = np.arange(-100, 101, dtype=np.float64)
    tk = rng.uniform(-40, 40, rows)
    kmat = load("numpy").shifted_closed_form(b, tk, idx)
    c = rng.normal(size=window)
    depths = 32
    lo = np.empty((depths, rows), dtype=np.int64)
    hi = np.empty_like(lo)
    for d in range(depths):
        u = tk / PI
        lo[d] = np.ceil(u - d - 1).astype(np.int64) + 100
        hi[d] = np.floor(u + d + 1).astype(np.int64) + 100
    table = load("numpy").closed_form(b, np.arange(-int(40_000 * scale), int(40_000 * scale) + 1) * (PI / 64))
    length = table.size - 64 * window
    eps = rng.normal(size=(int(2_000 * scale), window))
    return {
        "sinc": (t,),
        "closed_form": (b, t),
        "spectral_form": (b, t),
        "shifted_closed_form": (b, tk[: rows // 4], idx),
        "lattice_synthesis": (table, c, 64, 64 * (window - 1), length),
        "excluded_sup": (kmat, c, lo, hi),
        "noise_errors": (eps, kmat[:33]),
    }


def random_coeffs(n, rng):
    # positive, geometrically decaying, summing to one
    b = np.abs(rng.normal(size=n)) * 0.5 ** np.arange(n)
    return b / b.sum()


def load(name):
    return _hot.load(name)


def best_of(fn, args, repeat):
    fn(*args)
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), out


def max_gap(a, b):
    if isinstance(a, tuple):
        return max(max_gap(x, y) for x, y in zip(a, b))
    return float(np.max(np.abs(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64))))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0, help="problem-size multiplier")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    work = cases(args.scale, rng)
    try:
        fast = load("numba")
    except ImportError:
        fast = None
        print("numba is not importable; timing the numpy backend only")
    slow = load("numpy")

    print(f"{'kernel':<22}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}{'max gap':>12}")
    for name, fargs in work.items():
        t_np, out_np = best_of(getattr(slow, name), fargs, args.repeat)
        if fast is None:
            print(f"{name:<22}{t_np:>12.4f}{'-':>12}{'-':>10}{'-':>12}")
            continue
        t_nb, out_nb = best_of(getattr(fast, name), fargs, args.repeat)
        print(f"{name:<22}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>9.1f}x{max_gap(out_np, out_nb):>12.1e}")


if __name__ == "__main__":
    main()
