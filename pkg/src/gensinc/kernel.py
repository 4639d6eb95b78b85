"""The generalized sinc kernel and its piecewise-constant spectrum.

Fourier convention: unitary, angular frequency,
``(Ff)(xi) = (2 pi)^(-1/2) \\int f(t) exp(-i xi t) dt``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _hot
from .generators import AnalyticGenerator, CoeffSeq


def _as_array(x):
    return np.ascontiguousarray(np.asarray(x, dtype=np.float64).ravel())


def _like(x, out):
    return out[0] if np.ndim(x) == 0 else out.reshape(np.shape(x))


@dataclass(frozen=True)
class CascadeFilter:
    """H(xi) = b_n on I_n = (-(n+1), -n] U [n, n+1)."""

    coeffs: CoeffSeq


def eval_H(filt, xi):
    xi = np.asarray(xi, dtype=np.float64)
    b = filt.coeffs.coeffs
    band = np.floor(np.abs(np.atleast_1d(xi)))
    inside = band < b.size
    out = np.zeros(band.shape)
    out[inside] = b[band[inside].astype(np.int64)]
    return _like(xi, out)


@dataclass(frozen=True)
class GeneralizedSinc:
    """Evaluable kernel sinc_F built from a coefficient sequence."""

    coeffs: CoeffSeq
    l1: float = field(init=False)
    l2: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "l1", self.coeffs.l1_norm())
        object.__setattr__(self, "l2", self.coeffs.l2_norm())

    @classmethod
    def from_generator(cls, gen: AnalyticGenerator):
        return cls(gen.coeffs)

    @property
    def b(self):
        return self.coeffs.coeffs

    @property
    def F1(self):
        """F(1) = sum of the stored coefficients = sinc_F(0)."""
        return float(self.b.sum())

    @property
    def filter(self):
        return CascadeFilter(self.coeffs)

    def __call__(self, t):
        return eval_sinc_F(self, t)


def eval_sinc_F(kernel, t):
    """sinc(t/2) * Re{F(e^{it}) e^{it/2}} = sinc(t/2) sum_n b_n cos((n + 1/2) t)."""
    arr = _as_array(t)
    return _like(t, _hot.impl.closed_form(np.ascontiguousarray(kernel.b), arr))


def eval_sinc_F_spectral(kernel, t):
    """Inverse transform of H integrated band by band.

    Over I_n the integral of exp(i xi t) is 2 (sin((n+1)t) - sin(nt)) / t, so
    the kernel is sum_n b_n (sin((n+1)t) - sin(nt)) / t with value F(1) at 0.
    """
    arr = _as_array(t)
    return _like(t, _hot.impl.spectral_form(np.ascontiguousarray(kernel.b), arr))


def decay_envelope(kernel, t):
    """4 ||b||_1 / (2 + |t|), an upper bound on |sinc_F(t)|."""
    return 4.0 * kernel.l1 / (2.0 + np.abs(np.asarray(t, dtype=np.float64)))


def kernel_table(kernel, points_per_pi, lo, hi):
    """sinc_F(i pi / points_per_pi) for integer i in [lo, hi].

    The cosine sum P(t) = sum_n b_n cos((n + 1/2) t) satisfies
    P(t + 2 pi) = -P(t), so on the lattice it is tabulated over one period
    of 2 points_per_pi points and the rest follows by sign flips.
    """
    k = int(points_per_pi)
    period = 2 * k
    b = np.ascontiguousarray(kernel.b)
    i = np.arange(lo, hi + 1, dtype=np.int64)
    if i.size <= period:
        return _hot.impl.closed_form(b, i * (math.pi / k))
    base = np.arange(period, dtype=np.float64) * (math.pi / k)
    # closed_form at a point is sinc(t/2) P(t); strip the sinc factor on one period
    P = _hot.impl.closed_form(b, base) / _hot.impl.sinc(0.5 * base)
    wraps, r = np.divmod(i, period)
    sign = 1.0 - 2.0 * (wraps & 1)
    half = _hot.impl.sinc(np.ascontiguousarray(i * (0.5 * math.pi / k)))
    return half * sign * P[r]


def simpson_weights(n_points, step):
    if n_points < 3 or n_points % 2 == 0:
        raise ValueError("composite Simpson needs an odd number of points >= 3")
    w = np.full(n_points, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (step / 3.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Simpson rule on the lattice t = i pi / points_per_pi.

    ``half_width`` is the domain half-width in multiples of pi; when None it
    is chosen so the certified domain-tail bound is at most tol / 2 (and at
    least ``min_half_width``). An explicit half-width whose tail bound
    exceeds ``tol`` is an error.
    """

    points_per_pi: int = 64
    half_width: int | None = None
    tol: float = 1e-4
    min_half_width: int = 400
    max_half_width: int = 200_000

    def __post_init__(self):
        if self.points_per_pi < 1 or self.points_per_pi % 2:
            raise ValueError("points_per_pi must be a positive even integer")
        if not self.tol > 0:
            raise ValueError("tol must be positive")

    @property
    def step(self):
        return math.pi / self.points_per_pi

    def resolve(self, tail_constant):
        """Half-width m (in pi units) for a tail bound of tail_constant / (m pi)."""
        if self.half_width is not None:
            m = int(self.half_width)
            tail = tail_constant / (m * math.pi)
            if tail > self.tol:
                raise ValueError(
                    f"domain tail bound {tail:.3g} exceeds tolerance {self.tol:.3g}; enlarge half_width"
                )
            return m
        m = max(self.min_half_width, math.ceil(tail_constant / (0.5 * self.tol * math.pi)))
        if m > self.max_half_width:
            raise ValueError(f"certifying tol={self.tol:g} needs half_width {m} > {self.max_half_width}")
        return m


@dataclass(frozen=True)
class InnerProduct:
    shift: int
    value: float
    tail_bound: float
    half_width: float


def inner_products_shifted(kernel, shifts, quad=QuadratureSpec()):
    """<sinc_F, sinc_F(. - n pi)> for every n in ``shifts``, from one kernel table.

    The integral runs over [min(0, n pi) - T, max(0, n pi) + T]. Outside it the
    integrand is below 4 L^2 / (|t| |t - n pi|) with L = ||b||_1 (from
    |sinc_F(t)| <= 2 L / |t|), so the two discarded tails add up to at most
    8 L^2 / T.
    """
    shifts = [int(n) for n in shifts]
    k = quad.points_per_pi
    m = quad.resolve(8.0 * kernel.l1 ** 2)
    half = m * math.pi
    reach = max(abs(n) for n in shifts)
    lo = -(m + reach) * k
    table = kernel_table(kernel, k, lo, (m + reach) * k)
    results = []
    for n in shifts:
        a = (min(0, n) - m) * k
        z = (max(0, n) + m) * k
        base = table[a - lo:z - lo + 1]
        moved = table[a - n * k - lo:z - n * k - lo + 1]
        w = simpson_weights(base.size, quad.step)
        value = float(np.dot(w, base * moved))
        results.append(InnerProduct(n, value, 8.0 * kernel.l1 ** 2 / half, half))
    return results


def inner_product_shifted(kernel, n, quad=QuadratureSpec()):
    return inner_products_shifted(kernel, [n], quad)[0]
