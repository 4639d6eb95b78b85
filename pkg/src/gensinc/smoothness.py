"""Sobolev smoothness certificates from the series sum_n b_n^2 n^(2s).

Convergence of the series at s certifies nu_2(f) >= s for every f in V_F.
The certificate is one-directional: divergence says nothing about nu_2.

The n = 0 term is b_0^2 * 0^(2s), taken as b_0^2 for s <= 0 and 0 for s > 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

DIVERGE_RATIO = 1.5
CONVERGE_RATIO = 1.01
NUMERIC_TERMS = 10_000


class Verdict(str, enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    INCONCLUSIVE = "inconclusive"


def _log_terms(b, s, N):
    coeffs = b.extended(N + 1)
    n = np.arange(coeffs.size)
    keep = coeffs != 0
    if s > 0:
        keep &= n > 0
    nn = n[keep].astype(np.float64)
    logs = 2.0 * np.log(np.abs(coeffs[keep]))
    pos = nn > 0
    logs[pos] += 2.0 * s * np.log(nn[pos])
    return logs


def series_partial_log(b, s, N):
    """log of sum_{n=0}^{N} b_n^2 n^(2s); -inf for an all-zero sum.

    Coefficients past the stored ones come from the decay class.
    """
    logs = _log_terms(b, s, N)
    if logs.size == 0:
        return -math.inf
    top = logs.max()
    return float(top + math.log(math.fsum(np.exp(logs - top))))


def series_partial(b, s, N):
    """sum_{n=0}^{N} b_n^2 n^(2s); inf if it overflows a double."""
    logs = _log_terms(b, s, N)
    if logs.size == 0:
        return 0.0
    if logs.max() + math.log(logs.size) < 700.0:
        return math.fsum(np.exp(logs))
    log = series_partial_log(b, s, N)
    return math.exp(log) if log < 709.0 else math.inf


def classify_numeric(b, s, N=NUMERIC_TERMS):
    """Partial-sum ratio test S_2N / S_N.

    Custom sequences are capped at their stored length, so N shrinks to fit.
    """
    if b.decay.kind == "custom":
        N = min(N, (b.n_terms - 1) // 2)
    if N < 1:
        return Verdict.INCONCLUSIVE
    lo = series_partial_log(b, s, N)
    hi = series_partial_log(b, s, 2 * N)
    if lo == -math.inf:
        return Verdict.CONVERGES if hi == -math.inf else Verdict.INCONCLUSIVE
    ratio = math.exp(hi - lo)
    if ratio > DIVERGE_RATIO:
        return Verdict.DIVERGES
    if ratio < CONVERGE_RATIO:
        return Verdict.CONVERGES
    return Verdict.INCONCLUSIVE


def classify(b, s):
    kind = b.decay.kind
    if kind in ("finite", "geometric"):
        return Verdict.CONVERGES
    if kind == "power_law":
        return Verdict.CONVERGES if 2.0 * b.decay.p - 2.0 * s > 1.0 else Verdict.DIVERGES
    return classify_numeric(b, s)


def nu2_lower_bound(b):
    """Certified lower bound on the Sobolev smoothness of every f in V_F."""
    kind = b.decay.kind
    if kind in ("finite", "geometric"):
        return math.inf
    if kind == "power_law":
        return b.decay.p - 0.5
    raise ValueError("no certified smoothness bound for a custom decay class")


@dataclass(frozen=True)
class SmoothnessRow:
    s: float
    partial_N: float
    partial_2N: float
    verdict: Verdict


@dataclass(frozen=True)
class SmoothnessReport:
    rows: tuple
    N: int
    nu2_bound: float | None


def smoothness_report(b, s_values, N=NUMERIC_TERMS):
    rows = tuple(
        SmoothnessRow(float(s), series_partial(b, s, N), series_partial(b, s, 2 * N), classify(b, s))
        for s in s_values
    )
    try:
        nu2 = nu2_lower_bound(b)
    except ValueError:
        nu2 = None
    return SmoothnessReport(rows, N, nu2)
