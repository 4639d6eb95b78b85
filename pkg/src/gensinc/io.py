"""JSON loading for coefficient, Blaschke and signal files."""

import json
from pathlib import Path

from .generators import DEFAULT_TERMS, BlaschkeGenerator, CoeffSeq, generator_to_F
from .kernel import GeneralizedSinc
from .sampling import SampledSignal


class InputError(ValueError):
    """Malformed or invalid input file."""


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def kernel_from_json(obj):
    """Kernel from ``{"coeffs": [...]}`` or ``{"blaschke": [...], "n_terms": N}``."""
    if isinstance(obj, dict) and "blaschke" in obj:
        gen = BlaschkeGenerator.from_json(obj)
        n_terms = obj.get("n_terms", DEFAULT_TERMS)
        if not isinstance(n_terms, int) or n_terms < 1:
            raise ValueError("'n_terms' must be a positive integer")
        return GeneralizedSinc(generator_to_F(gen, n_terms).coeffs)
    return GeneralizedSinc(CoeffSeq.from_json(obj))


def load_kernel(path):
    obj = read_json(path)
    try:
        return kernel_from_json(obj)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_signal(path):
    obj = read_json(path)
    try:
        return SampledSignal.from_json(obj)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def save_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
