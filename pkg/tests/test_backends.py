import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gensinc import _hot

NUMBA = _hot.load("numba")
NUMPY = _hot.load("numpy")

coeffs = arrays(np.float64, st.integers(1, 40), elements=st.floats(-2, 2))
times = arrays(np.float64, st.integers(1, 60), elements=st.floats(-200, 200))


@settings(max_examples=60, deadline=None)
@given(coeffs, times)
def test_closed_and_spectral_forms_agree_across_backends(b, t):
    for name in ("closed_form", "spectral_form"):
        a = getattr(NUMBA, name)(b, t)
        c = getattr(NUMPY, name)(b, t)
        np.testing.assert_allclose(a, c, rtol=0, atol=1e-12 * (1 + np.abs(b).sum()))


def test_sinc_taylor_branch_matches_direct_formula():
    x = np.array([0.0, 1e-5, -9e-5, 1e-4, 0.3, -2.0])
    expected = np.where(x == 0, 1.0, np.sin(x) / np.where(x == 0, 1, x))
    for impl in (NUMBA, NUMPY):
        np.testing.assert_allclose(impl.sinc(x), expected, rtol=1e-15, atol=0)


def test_shifted_matrix_and_noise_errors_agree():
    rng = np.random.default_rng(3)
    b = rng.normal(size=9)
    t = rng.uniform(-30, 30, 17)
    idx = np.arange(-6, 7, dtype=np.float64)
    k1 = NUMBA.shifted_closed_form(b, t, idx)
    k2 = NUMPY.shifted_closed_form(b, t, idx)
    np.testing.assert_allclose(k1, k2, atol=1e-13)
    eps = rng.normal(size=(5, idx.size))
    np.testing.assert_allclose(NUMBA.noise_errors(eps, k1), NUMPY.noise_errors(eps, k1), atol=1e-13)


def test_lattice_synthesis_and_excluded_sup_agree():
    rng = np.random.default_rng(4)
    table = rng.normal(size=400)
    c = rng.normal(size=7)
    a = NUMBA.lattice_synthesis(table, c, 8, 60, 200)
    b = NUMPY.lattice_synthesis(table, c, 8, 60, 200)
    np.testing.assert_allclose(a, b, atol=1e-13)
    kmat = rng.normal(size=(30, 7))
    lo = rng.integers(0, 4, size=(3, 30))
    hi = lo + rng.integers(0, 4, size=(3, 30))
    s1, w1 = NUMBA.excluded_sup(kmat, c, lo, hi)
    s2, w2 = NUMPY.excluded_sup(kmat, c, lo, hi)
    np.testing.assert_allclose(s1, s2, atol=1e-13)
    np.testing.assert_array_equal(w1, w2)


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        _hot.load("fortran")


@pytest.mark.parametrize("flag, expected", [("1", "numpy"), ("0", "numba")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, GENSINC_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "import gensinc; print(gensinc.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected
