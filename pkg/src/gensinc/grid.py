"""Parsing of grid specs like ``-10pi:10pi:pi/64``.

Values that are rational multiples of pi are kept as Fractions so a grid
point k pi is produced as float(k) * pi, a single rounding.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_TOKEN = re.compile(
    r"^(?P<sign>[+-]?)(?P<num>\d+(?:\.\d*)?|\.\d+)?(?P<pi>pi)?(?:/(?P<den>\d+(?:\.\d*)?))?$"
)


@dataclass(frozen=True)
class Quantity:
    coef: Fraction
    pi: bool

    def __float__(self):
        return float(self.coef) * math.pi if self.pi else float(self.coef)


def parse_value(text):
    """Parse ``2pi``, ``-pi/64``, ``3pi/4``, ``1.5`` and similar."""
    m = _TOKEN.match(text.strip().replace(" ", "").replace("*", ""))
    if not m or (m["num"] is None and m["pi"] is None):
        raise ValueError(f"cannot parse value {text!r}")
    coef = Fraction(m["num"]) if m["num"] is not None else Fraction(1)
    if m["den"] is not None:
        den = Fraction(m["den"])
        if den == 0:
            raise ValueError(f"division by zero in {text!r}")
        coef /= den
    if m["sign"] == "-":
        coef = -coef
    return Quantity(coef, m["pi"] is not None)


def parse_grid(text):
    """``start:stop:step`` inclusive of stop when it falls on the lattice."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:step, got {text!r}")
    a, b, h = (parse_value(p) for p in parts)
    if h.coef <= 0:
        raise ValueError("grid step must be positive")
    if not float(a) < float(b):
        raise ValueError("grid start must be below stop")
    zero_ok = [q.coef == 0 for q in (a, b)]
    if all(q.pi or z for q, z in zip((a, b), zero_ok)) and h.pi:
        count = int((b.coef - a.coef) // h.coef) + 1
        coefs = [a.coef + i * h.coef for i in range(count)]
        return np.array([float(c) for c in coefs]) * math.pi
    if not (a.pi or b.pi or h.pi):
        count = int((b.coef - a.coef) // h.coef) + 1
        return np.array([float(a.coef + i * h.coef) for i in range(count)])
    fa, fb, fh = float(a), float(b), float(h)
    count = int(math.floor((fb - fa) / fh * (1 + 1e-12))) + 1
    return fa + fh * np.arange(count)


def parse_int_list(text):
    """``1..32`` or ``1,2,4,8`` (ranges may be mixed in: ``1..4,8``)."""
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if ".." in piece:
            lo, hi = piece.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif piece:
            out.append(int(piece))
    if not out:
        raise ValueError(f"empty integer list {text!r}")
    return out


def parse_float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]
