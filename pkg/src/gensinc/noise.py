"""Monte-Carlo study of reconstruction from iid noisy samples."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _hot
from .sampling import shifted_kernel

DISTRIBUTIONS = ("gaussian", "uniform_centered")
MEAN_BAND = 4.0
# two-sided normal tail beyond MEAN_BAND standard errors
_BAND_FALSE_POSITIVE = math.erfc(MEAN_BAND / math.sqrt(2.0))


@dataclass(frozen=True)
class NoiseModel:
    """Zero-mean iid noise of standard deviation sigma.

    ``uniform_centered`` draws from [-sigma sqrt(3), sigma sqrt(3)].
    Trial m uses its own stream seeded by (seed, m).
    """

    sigma: float
    distribution: str = "gaussian"
    seed: int = 0

    def __post_init__(self):
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}")

    def trial_rng(self, trial):
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(int(trial),)))

    def draw(self, rng, size):
        if self.distribution == "gaussian":
            return self.sigma * rng.standard_normal(size)
        half = self.sigma * math.sqrt(3.0)
        return rng.uniform(-half, half, size)


def noisy_reconstruct(sig, noise, t, trial_rng):
    """f_noisy(t) = sum_n (f(n pi) + eps_n) sinc_F(t - n pi), one eps_n per window index."""
    eps = noise.draw(trial_rng, sig.values.size)
    out = shifted_kernel(sig, t) @ (sig.values + eps)
    return out[0] if np.ndim(t) == 0 else out.reshape(np.shape(t))


def variance_bound(kernel, sigma):
    """2 sigma^2 ||b||_1^2 (1 + 8/pi^2)."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    return 2.0 * sigma ** 2 * kernel.l1 ** 2 * (1.0 + 8.0 / math.pi ** 2)


@dataclass(frozen=True)
class ShiftSum:
    value: np.ndarray
    tail_bound: np.ndarray


def sinc_sq_shift_sum(kernel, t, radius=4096, tol=None):
    """sum_{|n| <= radius} sinc_F(t - n pi)^2 with a bound on the rest.

    For |n| > radius, |t - n pi| >= (|n| - |t|/pi) pi, so the remainder is at
    most (8 L^2 / pi^2)(1/d^2 + 1/d) with d = radius + 1 - |t|/pi.
    """
    t = np.ascontiguousarray(np.atleast_1d(np.asarray(t, dtype=np.float64)))
    u = np.abs(t) / math.pi
    if np.any(u >= radius):
        raise ValueError("radius must exceed |t|/pi")
    idx = np.arange(-radius, radius + 1, dtype=np.float64)
    kmat = _hot.impl.shifted_closed_form(np.ascontiguousarray(kernel.b), t, idx)
    value = (kmat * kmat).sum(axis=1)
    d = radius + 1.0 - u
    tail = 8.0 * kernel.l1 ** 2 / math.pi ** 2 * (1.0 / d ** 2 + 1.0 / d)
    if tol is not None and np.any(tail > tol):
        raise ValueError(f"shift-sum tail bound {tail.max():.3g} exceeds tolerance {tol:.3g}")
    return ShiftSum(value, tail)


@dataclass(frozen=True)
class NoiseRow:
    t: float
    mean_err: float
    var_err: float
    exact_var: float
    bound: float
    band: float

    @property
    def mean_ok(self):
        return abs(self.mean_err) <= self.band

    def var_close(self, rel_tol):
        if self.exact_var == 0:
            return self.var_err == 0
        return abs(self.var_err - self.exact_var) <= rel_tol * self.exact_var

    @property
    def var_bounded(self):
        return self.var_err <= self.bound


@dataclass(frozen=True)
class NoiseStudy:
    rows: tuple
    trials: int
    model: NoiseModel

    def allowed_mean_exceedances(self):
        """1 plus the expected number of false band exceedances, floored."""
        return 1 + int(len(self.rows) * _BAND_FALSE_POSITIVE)

    def mean_exceedances(self):
        return sum(not r.mean_ok for r in self.rows)

    def passes(self, rel_tol=0.1):
        return (
            all(r.var_close(rel_tol) and r.var_bounded for r in self.rows)
            and self.mean_exceedances() <= self.allowed_mean_exceedances()
        )


def _block_moments(sig, noise, kmat, start, count):
    width = sig.values.size
    eps = np.empty((count, width))
    for m in range(count):
        eps[m] = noise.draw(noise.trial_rng(start + m), width)
    errs = _hot.impl.noise_errors(eps, kmat)
    mean = errs.mean(axis=0)
    dev = errs - mean
    return count, mean, (dev * dev).sum(axis=0)


def run_noise_study(sig, noise, trials, t_grid, workers=1, block=250):
    """Empirical mean and variance of f(t) - f_noisy(t) over independent trials.

    Trials are processed in fixed blocks; per-block moments are merged in block
    order, so the result depends only on (seed, trials, block), not on workers.
    """
    if trials < 2:
        raise ValueError("need at least two trials")
    t = np.ascontiguousarray(np.atleast_1d(np.asarray(t_grid, dtype=np.float64)))
    kmat = np.ascontiguousarray(shifted_kernel(sig, t))
    starts = list(range(0, trials, block))
    jobs = [(s, min(block, trials - s)) for s in starts]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _block_moments(sig, noise, kmat, *j), jobs))
    else:
        parts = [_block_moments(sig, noise, kmat, *j) for j in jobs]

    n, mean, m2 = parts[0]
    mean = mean.copy()
    m2 = m2.copy()
    for nb, mb, m2b in parts[1:]:
        total = n + nb
        delta = mb - mean
        mean = mean + delta * (nb / total)
        m2 = m2 + m2b + delta * delta * (n * nb / total)
        n = total
    var = m2 / (n - 1)

    exact = noise.sigma ** 2 * (kmat * kmat).sum(axis=1)
    bound = variance_bound(sig.kernel, noise.sigma)
    band = MEAN_BAND * np.sqrt(exact / trials)
    rows = tuple(
        NoiseRow(float(ti), float(mi), float(vi), float(ei), bound, float(bi))
        for ti, mi, vi, ei, bi in zip(t, mean, var, exact, band)
    )
    return NoiseStudy(rows, trials, noise)
