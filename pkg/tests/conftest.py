import math

import numpy as np
import pytest

from gensinc import BlaschkeGenerator, CoeffSeq, GeneralizedSinc, generator_to_F
from gensinc.sampling import SampledSignal


def kernel_families():
    """The four coefficient families used throughout the checks."""
    return {
        "classic": CoeffSeq([1.0]),
        "geometric": CoeffSeq.geometric(0.5, 64),
        "power_law": CoeffSeq.power_law(3, 64),
        "blaschke": generator_to_F(BlaschkeGenerator((0.5, -0.3))).coeffs,
    }


def test_signals():
    """Three decaying signals in V_F, each on a different normalised kernel."""
    classic = GeneralizedSinc(CoeffSeq([1.0]))
    geo = GeneralizedSinc(CoeffSeq.geometric(0.5, 64).normalized())
    power = GeneralizedSinc(CoeffSeq.power_law(3, 64).normalized())
    return {
        "geometric_profile": SampledSignal.from_profile(lambda n: 0.8 ** np.abs(n), classic),
        "gaussian_cosine": SampledSignal.from_profile(
            lambda n: np.exp(-(n ** 2) / 50.0) * np.cos(0.7 * n), geo
        ),
        "alternating_power": SampledSignal.from_profile(
            lambda n: (-1.0) ** n / (1.0 + np.abs(n)) ** 1.5, power
        ),
    }


test_signals.__test__ = False


@pytest.fixture(params=list(kernel_families()))
def family(request):
    return request.param, GeneralizedSinc(kernel_families()[request.param])


@pytest.fixture(scope="session")
def signals():
    return test_signals()


@pytest.fixture
def classic():
    return GeneralizedSinc(CoeffSeq([1.0]))


PI = math.pi
