"""Generalized sinc kernels and sampling in shift-invariant spaces."""

from ._hot import BACKEND
from .generators import (
    AnalyticGenerator,
    BlaschkeGenerator,
    CoeffSeq,
    DecayClass,
    eval_blaschke,
    eval_F,
    generator_to_F,
    phi_G,
)
from .kernel import (
    CascadeFilter,
    GeneralizedSinc,
    QuadratureSpec,
    decay_envelope,
    eval_H,
    eval_sinc_F,
    eval_sinc_F_spectral,
    inner_product_shifted,
    inner_products_shifted,
)
from .noise import NoiseModel, noisy_reconstruct, run_noise_study, sinc_sq_shift_sum, variance_bound
from .sampling import SampledSignal, parseval_check, reconstruct, spectrum
from .smoothness import Verdict, classify, classify_numeric, nu2_lower_bound, series_partial
from .truncation import adaptive_index_set, partial_sum, run_truncation_study, truncation_bound

__version__ = "0.1.0"
