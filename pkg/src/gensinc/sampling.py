"""Signals in the shift-invariant space V_F, represented by samples f(n pi)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _hot
from .generators import CoeffSeq
from .kernel import GeneralizedSinc, QuadratureSpec, eval_H, kernel_table, simpson_weights

F1_TOL = 1e-8
DEFAULT_RADIUS = 64


@dataclass(frozen=True)
class SampledSignal:
    """Samples f(n pi) for n in [n_min, n_min + len(values) - 1].

    The kernel must satisfy |F(1) - 1| <= 1e-8 for its stored coefficients,
    which is what makes the reconstruction interpolate the samples.
    """

    n_min: int
    values: np.ndarray
    kernel: GeneralizedSinc

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64).ravel()
        if vals.size < 1:
            raise ValueError("a signal needs at least one sample")
        if not np.all(np.isfinite(vals)):
            raise ValueError("samples must be finite")
        gap = abs(self.kernel.F1 - 1.0)
        if gap > F1_TOL:
            raise ValueError(f"signals in V_F need F(1) = 1, kernel has |F(1) - 1| = {gap:.3g}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "n_min", int(self.n_min))

    @classmethod
    def from_mapping(cls, samples, kernel):
        """Build from {index: value}; gaps inside the window are zero."""
        if not samples:
            raise ValueError("no samples given")
        idx = {int(k): float(v) for k, v in samples.items()}
        lo, hi = min(idx), max(idx)
        vals = np.zeros(hi - lo + 1)
        for k, v in idx.items():
            vals[k - lo] = v
        return cls(lo, vals, kernel)

    @classmethod
    def from_profile(cls, profile, kernel, radius=DEFAULT_RADIUS):
        """Samples profile(n) for |n| <= radius."""
        n = np.arange(-radius, radius + 1)
        return cls(-radius, np.asarray(profile(n), dtype=np.float64), kernel)

    @property
    def n_max(self):
        return self.n_min + self.values.size - 1

    @property
    def indices(self):
        return np.arange(self.n_min, self.n_max + 1)

    def sample(self, k):
        if self.n_min <= k <= self.n_max:
            return float(self.values[k - self.n_min])
        return 0.0

    def sample_energy(self):
        """sum f(n pi)^2 over the window."""
        return float(np.dot(self.values, self.values))

    def l2_norm(self):
        """||f||_{L2} from the Parseval-type identity (exact given the samples)."""
        return math.sqrt(math.pi * self.kernel.l2 ** 2 * self.sample_energy())

    def to_json(self):
        out = {"samples": {str(k): float(v) for k, v in zip(self.indices, self.values) if v != 0.0}}
        out.update(self.kernel.coeffs.to_json())
        return out

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or not isinstance(obj.get("samples"), dict):
            raise ValueError("signal file needs a 'samples' object mapping index -> value")
        try:
            samples = {int(k): float(v) for k, v in obj["samples"].items()}
        except (TypeError, ValueError) as exc:
            raise ValueError(f"'samples' entries must be integer -> number: {exc}") from None
        return cls.from_mapping(samples, GeneralizedSinc(CoeffSeq.from_json(obj)))


def shifted_kernel(sig, t):
    """Matrix K[i, j] = sinc_F(t_i - n_j pi) over the signal window."""
    t = np.ascontiguousarray(np.atleast_1d(np.asarray(t, dtype=np.float64)))
    idx = np.ascontiguousarray(sig.indices.astype(np.float64))
    return _hot.impl.shifted_closed_form(np.ascontiguousarray(sig.kernel.b), t, idx)


def reconstruct(sig, t):
    """sum_n f(n pi) sinc_F(t - n pi) over the window."""
    out = shifted_kernel(sig, t) @ sig.values
    return out[0] if np.ndim(t) == 0 else out.reshape(np.shape(t))


def spectrum(sig, xi):
    """sqrt(pi/2) (sum_n f(n pi) e^{-i n pi xi}) H(xi)."""
    xi = np.asarray(xi, dtype=np.float64)
    flat = np.atleast_1d(xi)
    phase = np.exp(-1j * math.pi * np.outer(flat, sig.indices))
    out = math.sqrt(math.pi / 2) * (phase @ sig.values) * eval_H(sig.kernel.filter, flat)
    return out[0] if xi.ndim == 0 else out.reshape(xi.shape)


def lattice_reconstruct(sig, points_per_pi, lo, hi):
    """f(i pi / points_per_pi) for integer i in [lo, hi] from one kernel table."""
    k = points_per_pi
    t_lo = lo - sig.n_max * k
    table = kernel_table(sig.kernel, k, t_lo, hi - sig.n_min * k)
    return _hot.impl.lattice_synthesis(
        table, np.ascontiguousarray(sig.values), k, lo - sig.n_min * k - t_lo, hi - lo + 1
    )


@dataclass(frozen=True)
class ParsevalResult:
    lhs: float
    rhs: float
    tail_bound: float
    half_width: float

    @property
    def rel_gap(self):
        if self.rhs == 0:
            return abs(self.lhs)
        return abs(self.lhs - self.rhs) / self.rhs


def parseval_check(sig, quad=None, rtol=1e-3):
    """Time-domain ||f||^2 by Simpson quadrature against pi ||b||^2 sum f(n pi)^2.

    Beyond distance T from the window, |f(t)| <= 2 L ||c||_1 / (|t| - dist),
    so the discarded part of the integral is at most 8 L^2 ||c||_1^2 / T.
    With ``quad`` unset, T is sized so that bound is below rtol/2 of the rhs.
    """
    rhs = math.pi * sig.kernel.l2 ** 2 * sig.sample_energy()
    c1 = float(np.abs(sig.values).sum())
    tail_constant = 8.0 * sig.kernel.l1 ** 2 * c1 ** 2
    if rhs == 0.0:
        return ParsevalResult(0.0, 0.0, 0.0, 0.0)
    if quad is None:
        quad = QuadratureSpec(tol=rtol * rhs)
    k = quad.points_per_pi
    m = quad.resolve(tail_constant)
    lo = (sig.n_min - m) * k
    hi = (sig.n_max + m) * k
    f = lattice_reconstruct(sig, k, lo, hi)
    lhs = float(np.dot(simpson_weights(f.size, quad.step), f * f))
    return ParsevalResult(lhs, rhs, tail_constant / (m * math.pi), m * math.pi)
