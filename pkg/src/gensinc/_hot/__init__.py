"""Hot numeric loops with two interchangeable backends.

The numba backend is used when numba imports cleanly, unless the environment
variable ``GENSINC_DISABLE_NUMBA`` is set to a truthy value, in which case
the pure-numpy backend is used. Both expose the same functions.
"""

import importlib
import os

_FALSY = {"", "0", "false", "no", "off"}

BACKENDS = ("numba", "numpy")


def _numba_requested():
    return os.environ.get("GENSINC_DISABLE_NUMBA", "").strip().lower() in _FALSY


def load(name):
    """Return the backend module called ``name`` ("numba" or "numpy")."""
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    return importlib.import_module(f"{__name__}.{name}_impl")


def _select():
    if _numba_requested():
        try:
            return "numba", load("numba")
        except ImportError:
            pass
    return "numpy", load("numpy")


BACKEND, impl = _select()

__all__ = ["BACKEND", "BACKENDS", "impl", "load"]
