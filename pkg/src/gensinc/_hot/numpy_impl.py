"""Vectorised numpy versions of the hot loops.

Every function here has a loop twin in ``numba_impl`` with the same
signature. Inputs are float64 / int64 arrays; outputs are freshly allocated.
"""

import numpy as np

_CHUNK = 1 << 15
_TAYLOR_CUTOFF = 1e-4


def sinc(x):
    """sin(x)/x with a degree-6 Taylor polynomial for |x| < 1e-4."""
    x = np.asarray(x, dtype=np.float64)
    small = np.abs(x) < _TAYLOR_CUTOFF
    out = np.empty_like(x)
    xs = x[small]
    x2 = xs * xs
    out[small] = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    xl = x[~small]
    out[~small] = np.sin(xl) / xl
    return out


def closed_form(b, t):
    out = np.empty(t.size)
    half = np.arange(b.size) + 0.5
    for lo in range(0, t.size, _CHUNK):
        tc = t[lo:lo + _CHUNK]
        out[lo:lo + _CHUNK] = sinc(0.5 * tc) * (np.cos(np.outer(tc, half)) @ b)
    return out


def spectral_form(b, t):
    out = np.empty(t.size)
    n = np.arange(b.size, dtype=np.float64)
    total = b.sum()
    for lo in range(0, t.size, _CHUNK):
        tc = t[lo:lo + _CHUNK]
        arg = np.outer(tc, n)
        num = (np.sin(arg + tc[:, None]) - np.sin(arg)) @ b
        with np.errstate(divide="ignore", invalid="ignore"):
            chunk = num / tc
        chunk[tc == 0.0] = total
        out[lo:lo + _CHUNK] = chunk
    return out


def shifted_closed_form(b, t, idx):
    diff = t[:, None] - idx[None, :] * np.pi
    return closed_form(b, diff.ravel()).reshape(diff.shape)


def lattice_synthesis(table, c, stride, offset, length):
    """out[i] = sum_j c[j] * table[offset + i - stride * j]."""
    out = np.zeros(length)
    for j in range(c.size):
        if c[j] == 0.0:
            continue
        start = offset - stride * j
        out += c[j] * table[start:start + length]
    return out


def excluded_sup(kmat, c, lo, hi):
    """Per-depth max over rows of |sum of c_j K_ij over columns outside [lo, hi]|.

    ``lo``/``hi`` have shape (depths, rows) and hold column positions.
    Returns the maxima and the row where each is attained.
    """
    cols = np.arange(c.size)
    weighted = kmat * c[None, :]
    out = np.empty(lo.shape[0])
    where = np.empty(lo.shape[0], dtype=np.int64)
    for d in range(lo.shape[0]):
        outside = (cols[None, :] < lo[d][:, None]) | (cols[None, :] > hi[d][:, None])
        err = np.abs(np.where(outside, weighted, 0.0).sum(axis=1))
        where[d] = np.argmax(err)
        out[d] = err[where[d]]
    return out, where


def noise_errors(eps, kmat):
    """Reconstruction error f - f_noisy for each trial row of ``eps``."""
    return -(eps @ kmat.T)
