"""Coefficient sequences, the analytic function F and Blaschke generators.

A coefficient sequence ``b = (b_0, ..., b_{N-1})`` is the finite truncation of
an l2 sequence. Its decay class says how the discarded tail behaves, which
gives analytic bounds on the l1/l2 mass that was dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TERMS = 64

_DISK_SLACK = 1e-12
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class DecayClass:
    """Tail behaviour of a truncated coefficient sequence.

    kind is one of ``finite``, ``geometric`` (ratio ``a``), ``power_law``
    (exponent ``p``) or ``custom``. A custom sequence carries a declared
    ``tail`` bound on the l1 mass past the last stored coefficient.
    """

    kind: str = "finite"
    a: float | None = None
    p: float | None = None
    tail: float = 0.0

    def __post_init__(self):
        if self.kind == "geometric":
            if self.a is None or not abs(self.a) < 1:
                raise ValueError(f"geometric decay needs |a| < 1, got a={self.a}")
        elif self.kind == "power_law":
            if self.p is None or not self.p > 0.5:
                raise ValueError(f"power_law decay needs p > 1/2, got p={self.p}")
        elif self.kind == "custom":
            if not (self.tail >= 0 and math.isfinite(self.tail)):
                raise ValueError(f"custom decay needs a finite tail bound >= 0, got {self.tail}")
        elif self.kind != "finite":
            raise ValueError(f"unknown decay class {self.kind!r}")

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "geometric":
            out["a"] = self.a
        elif self.kind == "power_law":
            out["p"] = self.p
        elif self.kind == "custom":
            out["tail"] = self.tail
        return out

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("decay_class must be an object with a 'kind' field")
        kind = obj["kind"]
        return cls(
            kind=kind,
            a=float(obj["a"]) if kind == "geometric" else None,
            p=float(obj["p"]) if kind == "power_law" else None,
            tail=float(obj.get("tail", 0.0)) if kind == "custom" else 0.0,
        )


FINITE = DecayClass()


@dataclass(frozen=True)
class CoeffSeq:
    """Truncated spectral coefficient sequence with a declared decay class."""

    coeffs: np.ndarray
    decay: DecayClass = FINITE

    def __post_init__(self):
        b = np.array(self.coeffs, dtype=np.float64).ravel()
        if b.size < 1:
            raise ValueError("a coefficient sequence needs at least one entry")
        if not np.all(np.isfinite(b)):
            raise ValueError("coefficients must be finite")
        b.setflags(write=False)
        object.__setattr__(self, "coeffs", b)

    @classmethod
    def geometric(cls, a, n_terms=DEFAULT_TERMS):
        """b_n = a^n (1 - a), whose full sum is 1."""
        decay = DecayClass("geometric", a=a)
        return cls((1.0 - a) * a ** np.arange(n_terms), decay)

    @classmethod
    def power_law(cls, p, n_terms=DEFAULT_TERMS):
        """b_n = (n + 1)^(-p)."""
        decay = DecayClass("power_law", p=p)
        return cls((np.arange(n_terms) + 1.0) ** (-p), decay)

    def __len__(self):
        return self.coeffs.size

    @property
    def n_terms(self):
        return self.coeffs.size

    def l1_norm(self):
        return float(np.abs(self.coeffs).sum())

    def l2_norm(self):
        return float(np.sqrt(np.dot(self.coeffs, self.coeffs)))

    def l1_tail(self):
        """Upper bound on sum_{n >= N} |b_n| implied by the decay class."""
        last = abs(self.coeffs[-1])
        n = self.n_terms
        kind = self.decay.kind
        if kind == "finite":
            return 0.0
        if kind == "custom":
            return self.decay.tail
        if kind == "geometric":
            r = abs(self.decay.a)
            return last * r / (1.0 - r)
        p = self.decay.p
        if p <= 1:
            return math.inf
        # |b_m| <= last * (N/(m+1))^p, summed by integral comparison
        return last * n / (p - 1.0)

    def l2_tail(self):
        """Upper bound on sum_{n >= N} b_n^2 implied by the decay class."""
        last = abs(self.coeffs[-1])
        n = self.n_terms
        kind = self.decay.kind
        if kind == "finite":
            return 0.0
        if kind == "custom":
            return self.decay.tail ** 2
        if kind == "geometric":
            r2 = self.decay.a ** 2
            return last * last * r2 / (1.0 - r2)
        p = self.decay.p
        return last * last * n / (2.0 * p - 1.0)

    def extended(self, n_total):
        """First ``n_total`` coefficients, continuing the tail by the decay law.

        Custom sequences cannot be continued and are capped at their length.
        """
        n = self.n_terms
        if n_total <= n:
            return self.coeffs[:n_total].copy()
        kind = self.decay.kind
        if kind == "custom":
            return self.coeffs.copy()
        m = np.arange(n, n_total)
        last = self.coeffs[-1]
        if kind == "finite":
            extra = np.zeros(m.size)
        elif kind == "geometric":
            extra = last * self.decay.a ** (m - (n - 1))
        else:
            extra = last * (n / (m + 1.0)) ** self.decay.p
        return np.concatenate([self.coeffs, extra])

    def normalized(self):
        """Copy scaled so the stored coefficients sum to exactly one."""
        total = self.coeffs.sum()
        if total == 0:
            raise ValueError("cannot normalise a sequence with zero sum")
        scaled = self.coeffs / total
        decay = self.decay
        if decay.kind == "custom":
            decay = DecayClass("custom", tail=decay.tail / abs(total))
        # one correction pass so the float sum lands on 1
        scaled[0] += 1.0 - scaled.sum()
        return CoeffSeq(scaled, decay)

    def to_json(self):
        return {"coeffs": [float(x) for x in self.coeffs], "decay_class": self.decay.to_json()}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise ValueError("coefficient file needs a 'coeffs' array")
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, list) or not all(isinstance(x, (int, float)) for x in coeffs):
            raise ValueError("'coeffs' must be a list of numbers")
        decay = DecayClass.from_json(obj["decay_class"]) if "decay_class" in obj else FINITE
        return cls(coeffs, decay)


@dataclass(frozen=True)
class AnalyticGenerator:
    """F(z) = sum b_n z^n on the closed unit disk."""

    coeffs: CoeffSeq
    F1_equals_1: bool = False
    tol: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        if self.F1_equals_1:
            gap = abs(self.coeffs.coeffs.sum() - 1.0)
            allowed = self.coeffs.l1_tail() + self.tol
            if gap > allowed:
                raise ValueError(f"F(1) = 1 required but |F(1) - 1| = {gap:.3g} > {allowed:.3g}")


def _check_disk(z):
    if np.any(np.abs(z) > 1.0 + _DISK_SLACK):
        raise ValueError("z must lie in the closed unit disk")


def eval_F(gen, z):
    """Evaluate the truncated power series at z (|z| <= 1) by Horner's rule."""
    z = np.asarray(z, dtype=np.complex128)
    _check_disk(z)
    b = gen.coeffs.coeffs
    acc = np.zeros_like(z)
    for coef in b[::-1]:
        acc = acc * z + coef
    return acc[()] if acc.ndim == 0 else acc


@dataclass(frozen=True)
class BlaschkeGenerator:
    """Finite Blaschke product with real zeros a_j in (-1, 1)."""

    params: tuple

    def __post_init__(self):
        vals = []
        for a in self.params:
            if isinstance(a, complex) or np.iscomplexobj(a):
                raise ValueError("Blaschke parameters must be real")
            a = float(a)
            if not abs(a) < 1:
                raise ValueError(f"Blaschke parameter {a} outside (-1, 1)")
            vals.append(a)
        if not vals:
            raise ValueError("a Blaschke product needs at least one factor")
        object.__setattr__(self, "params", tuple(vals))

    def to_json(self):
        return {"blaschke": list(self.params)}

    @classmethod
    def from_json(cls, obj):
        params = obj.get("blaschke") if isinstance(obj, dict) else None
        if not isinstance(params, list) or not all(isinstance(x, (int, float)) for x in params):
            raise ValueError("'blaschke' must be a list of real numbers")
        return cls(tuple(params))


def eval_blaschke(gen, z):
    z = np.asarray(z, dtype=np.complex128)
    _check_disk(z)
    out = np.ones_like(z)
    for a in gen.params:
        out = out * (z - a) / (1.0 - a * z)
    return out[()] if out.ndim == 0 else out


def generator_to_F(gen, n_terms=DEFAULT_TERMS, radius=0.9, max_terms=4096, tol=1e-12):
    """Taylor coefficients of F = (G - 1)/(z - 1) for a Blaschke product G.

    G is sampled on the circle |z| = radius and its Taylor coefficients g_k
    recovered by FFT. Since G(1) = 1, dividing by (z - 1) gives
    b_n = 1 - sum_{k <= n} g_k. Coefficients below the accumulated roundoff
    floor of that procedure are set to zero.

    Raises ValueError when n_terms > max_terms, when |b_{N-1}| >= tol, or when
    the series disagrees with the quotient on |z| = 0.9 by more than 1e-9.
    """
    if n_terms > max_terms:
        raise ValueError(f"n_terms={n_terms} exceeds max_terms={max_terms}")
    if not 0 < radius <= 1:
        raise ValueError("radius must lie in (0, 1]")
    m = max(256, 1 << int(math.ceil(math.log2(4 * n_terms))))
    k = np.arange(m)
    samples = eval_blaschke(gen, radius * np.exp(2j * np.pi * k / m))
    g = (np.fft.fft(samples) / m)[:n_terms].real / radius ** np.arange(n_terms)
    b = 1.0 - np.cumsum(g)
    # FFT coefficient error ~ eps * rms * sqrt(log M / M), amplified by radius^-k
    # and accumulated in quadrature by the running sum; plus the sum's own rounding
    rms = float(np.sqrt(np.mean(np.abs(samples) ** 2)))
    amp = np.sqrt(np.cumsum(radius ** (-2.0 * np.arange(n_terms))))
    level = np.maximum.accumulate(np.abs(np.cumsum(g)))
    floor = 4.0 * _EPS * (rms * math.sqrt(math.log2(m) / m) * amp + (np.arange(n_terms) + 1) * level)
    b[np.abs(b) < floor] = 0.0
    if abs(b[-1]) >= tol:
        raise ValueError(
            f"coefficient extraction did not converge: |b_{n_terms - 1}| = {abs(b[-1]):.3g} >= {tol:g}"
        )
    rho = max(abs(a) for a in gen.params)
    tail = abs(b[-1]) * rho / (1.0 - rho)
    seq = CoeffSeq(b, DecayClass("custom", tail=tail) if tail > 0 else FINITE)
    out = AnalyticGenerator(seq)

    probe = 0.9 * np.exp(1j * np.linspace(0.1, 2 * np.pi - 0.1, 97))
    quotient = (eval_blaschke(gen, probe) - 1.0) / (probe - 1.0)
    gap = float(np.abs(eval_F(out, probe) - quotient).max())
    if gap > 1e-9:
        raise ValueError(f"extracted series disagrees with (G-1)/(z-1) by {gap:.3g}")
    return out


_RICHARDSON_H = (1e-3, 5e-4, 2.5e-4)
_SMALL_T = 1e-6


def _phi_origin(gen):
    """phi_G(0) and its t^2 coefficient by two-level Richardson extrapolation."""
    h = np.array(_RICHARDSON_H)
    vals = np.imag(eval_blaschke(gen, np.exp(1j * h))) / h
    r1 = (4.0 * vals[1:] - vals[:-1]) / 3.0
    phi0 = (16.0 * r1[1] - r1[0]) / 15.0
    curv = (vals[0] - phi0) / h[0] ** 2
    return phi0, curv


def phi_G(gen, t):
    """Im(G(e^{it}))/t, using the extrapolated limit near t = 0."""
    t = np.asarray(t, dtype=np.float64)
    flat = np.atleast_1d(t)
    out = np.empty(flat.shape)
    small = np.abs(flat) < _SMALL_T
    big = ~small
    out[big] = np.imag(eval_blaschke(gen, np.exp(1j * flat[big]))) / flat[big]
    if small.any():
        phi0, curv = _phi_origin(gen)
        out[small] = phi0 + curv * flat[small] ** 2
    return out.reshape(t.shape)[()] if t.ndim == 0 else out.reshape(t.shape)
