import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _sinc1(x):
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    return math.sin(x) / x


@njit(cache=True, nogil=True)
def _closed1(b, t):
    # cos((n + 1/2) t) by repeated rotation through t: two trig calls per point
    c = math.cos(0.5 * t)
    s = math.sin(0.5 * t)
    ct = math.cos(t)
    st = math.sin(t)
    acc = 0.0
    for n in range(b.size):
        acc += b[n] * c
        c, s = c * ct - s * st, s * ct + c * st
    return _sinc1(0.5 * t) * acc


@njit(cache=True, nogil=True)
def sinc(x):
    out = np.empty(x.size)
    for i in range(x.size):
        out[i] = _sinc1(x[i])
    return out


@njit(cache=True, nogil=True)
def closed_form(b, t):
    out = np.empty(t.size)
    for i in range(t.size):
        out[i] = _closed1(b, t[i])
    return out


@njit(cache=True, nogil=True)
def spectral_form(b, t):
    out = np.empty(t.size)
    total = 0.0
    for n in range(b.size):
        total += b[n]
    for i in range(t.size):
        ti = t[i]
        if ti == 0.0:
            out[i] = total
            continue
        ct = math.cos(ti)
        st = math.sin(ti)
        sn, cn = 0.0, 1.0
        s = 0.0
        for n in range(b.size):
            s1 = sn * ct + cn * st
            cn = cn * ct - sn * st
            s += b[n] * (s1 - sn)
            sn = s1
        out[i] = s / ti
    return out


@njit(cache=True, nogil=True)
def shifted_closed_form(b, t, idx):
    out = np.empty((t.size, idx.size))
    for i in range(t.size):
        for j in range(idx.size):
            out[i, j] = _closed1(b, t[i] - idx[j] * np.pi)
    return out


@njit(cache=True, nogil=True)
def lattice_synthesis(table, c, stride, offset, length):
    out = np.zeros(length)
    for j in range(c.size):
        cj = c[j]
        if cj == 0.0:
            continue
        start = offset - stride * j
        for i in range(length):
            out[i] += cj * table[start + i]
    return out


@njit(cache=True, nogil=True)
def excluded_sup(kmat, c, lo, hi):
    depths, rows = lo.shape
    out = np.zeros(depths)
    where = np.zeros(depths, dtype=np.int64)
    for d in range(depths):
        best = 0.0
        for i in range(rows):
            s = 0.0
            for j in range(c.size):
                if j < lo[d, i] or j > hi[d, i]:
                    s += c[j] * kmat[i, j]
            if abs(s) > best:
                best = abs(s)
                where[d] = i
        out[d] = best
    return out, where


@njit(cache=True, nogil=True)
def noise_errors(eps, kmat):
    trials, width = eps.shape
    rows = kmat.shape[0]
    out = np.empty((trials, rows))
    for m in range(trials):
        for i in range(rows):
            s = 0.0
            for j in range(width):
                s += eps[m, j] * kmat[i, j]
            out[m, i] = -s
    return out
