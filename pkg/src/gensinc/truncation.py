"""Adaptively truncated reconstruction S_n and its sup-error bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _hot
from .sampling import shifted_kernel

# Relative snap for window endpoints that land on a sample point up to
# rounding of t / pi.
_SNAP = 1e-13


def _window_bounds(t, n):
    u = np.asarray(t, dtype=np.float64) / math.pi
    snap = _SNAP * (1.0 + np.abs(u) + n)
    lo = np.ceil(u - n - snap).astype(np.int64)
    hi = np.floor(u + n + snap).astype(np.int64)
    return lo, hi


def adaptive_index_set(t, n):
    """J_n(t) = {j : |t - j pi| <= n pi} as a range."""
    if n < 1:
        raise ValueError("truncation depth n must be >= 1")
    lo, hi = _window_bounds(t, n)
    return range(int(lo), int(hi) + 1)


def partial_sum(sig, t, n):
    """S_n(t): the reconstruction sum restricted to J_n(t) and the window."""
    j = adaptive_index_set(t, n)
    lo = max(j.start, sig.n_min)
    hi = min(j.stop - 1, sig.n_max)
    if lo > hi:
        return 0.0
    idx = np.arange(lo, hi + 1)
    vals = sig.values[lo - sig.n_min:hi - sig.n_min + 1]
    return float(np.dot(sig.kernel(t - idx * math.pi), vals))


def truncation_bound(sig, n):
    """(||b||_1/||b||_2) ||f||_{L2} sqrt((8/pi^3)(1/n^2 + 1/n))."""
    if n < 1:
        raise ValueError("truncation depth n must be >= 1")
    k = sig.kernel
    return k.l1 / k.l2 * sig.l2_norm() * math.sqrt(8.0 / math.pi ** 3 * (1.0 / n ** 2 + 1.0 / n))


def default_grid(sig, max_depth, points_per_pi=32):
    """Window support plus a 4 n pi margin, step pi / points_per_pi."""
    lo = (sig.n_min - 4 * max_depth) * points_per_pi
    hi = (sig.n_max + 4 * max_depth) * points_per_pi
    return np.arange(lo, hi + 1) * (math.pi / points_per_pi)


@dataclass(frozen=True)
class TruncationRow:
    n: int
    empirical_sup_error: float
    bound: float
    t_at_sup: float = float("nan")

    @property
    def ratio(self):
        return self.empirical_sup_error / self.bound if self.bound > 0 else 0.0

    @property
    def holds(self):
        return self.empirical_sup_error <= self.bound


@dataclass(frozen=True)
class TruncationStudy:
    rows: tuple
    slope: float
    grid_size: int

    @property
    def all_hold(self):
        return all(r.holds for r in self.rows)


def bound_slope(sig, depths):
    """Least-squares slope of log(bound) against log(n)."""
    depths = np.asarray(sorted(depths), dtype=np.float64)
    if depths.size < 2:
        return float("nan")
    bounds = [truncation_bound(sig, int(n)) for n in depths]
    if bounds[0] == 0:
        return float("nan")
    return float(np.polyfit(np.log(depths), np.log(bounds), 1)[0])


def run_truncation_study(sig, depths, t_grid=None, slope_from=8):
    """Grid sup of |f - S_n| next to the bound, for every depth.

    The error at t is summed directly over the excluded indices, which equals
    reconstruct(t) - partial_sum(t, n) without the cancellation. The slope is
    fitted over depths >= slope_from (all depths if fewer than two qualify).
    """
    depths = sorted(int(n) for n in depths)
    if not depths or depths[0] < 1:
        raise ValueError("depths must be positive integers")
    if t_grid is None:
        t_grid = default_grid(sig, depths[-1])
    t = np.ascontiguousarray(np.asarray(t_grid, dtype=np.float64))
    kmat = shifted_kernel(sig, t)
    lo = np.empty((len(depths), t.size), dtype=np.int64)
    hi = np.empty_like(lo)
    for d, n in enumerate(depths):
        l, h = _window_bounds(t, n)
        lo[d] = l - sig.n_min
        hi[d] = h - sig.n_min
    sup, where = _hot.impl.excluded_sup(kmat, np.ascontiguousarray(sig.values), lo, hi)
    rows = tuple(
        TruncationRow(n, float(s), truncation_bound(sig, n), float(t[w]))
        for n, s, w in zip(depths, sup, where)
    )
    tail = [n for n in depths if n >= slope_from]
    slope = bound_slope(sig, tail if len(tail) >= 2 else depths)
    return TruncationStudy(rows, slope, t.size)
