import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gensinc import CoeffSeq
from gensinc.generators import DecayClass
from gensinc.smoothness import (
    Verdict,
    classify,
    classify_numeric,
    nu2_lower_bound,
    series_partial,
    smoothness_report,
)


class TestSeries:
    def test_examples(self):
        b = CoeffSeq([1.0, 1.0, 1.0])
        assert series_partial(b, 1.0, 2) == pytest.approx(1 + 4)
        assert series_partial(b, 0.0, 2) == 3.0
        assert series_partial(CoeffSeq([0.0, 0.0]), 1.0, 1) == 0.0

    def test_origin_term_convention(self):
        b = CoeffSeq([2.0])
        assert series_partial(b, -1.0, 0) == 4.0
        assert series_partial(b, 0.0, 0) == 4.0
        assert series_partial(b, 0.5, 0) == 0.0

    def test_extends_through_decay_class(self):
        b = CoeffSeq.power_law(2, 4)
        brute = sum((n + 1.0) ** -4 * n ** 2 for n in range(1, 101))
        assert series_partial(b, 1.0, 100) == pytest.approx(brute, rel=1e-12)

    def test_overflow_is_inf(self):
        assert series_partial(CoeffSeq.power_law(1, 4), 200.0, 10_000) == math.inf

    def test_geometric_large_s_stays_finite_in_log_space(self):
        assert classify_numeric(CoeffSeq.geometric(0.5, 64), 100.0) is Verdict.CONVERGES


class TestClassify:
    def test_geometric_always_converges(self):
        assert classify(CoeffSeq.geometric(0.5, 64), 100.0) is Verdict.CONVERGES

    def test_power_law_threshold(self):
        b = CoeffSeq.power_law(3, 64)
        assert classify(b, 2.4) is Verdict.CONVERGES
        assert classify(b, 2.6) is Verdict.DIVERGES

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 4.0])
    @pytest.mark.parametrize("offset,expected", [(-0.3, Verdict.CONVERGES), (0.3, Verdict.DIVERGES)])
    def test_numeric_agrees_with_analytic(self, p, offset, expected):
        b = CoeffSeq.power_law(p, 64)
        s = p - 0.5 + offset
        assert classify(b, s) is expected
        assert classify_numeric(b, s, N=10_000) is expected

    @settings(max_examples=40, deadline=None)
    @given(st.floats(1.0, 5.0), st.floats(-2, 6), st.floats(-2, 6))
    def test_monotone_in_s(self, p, s1, s2):
        lo, hi = sorted((s1, s2))
        b = CoeffSeq.power_law(p, 64)
        if classify(b, hi) is Verdict.CONVERGES:
            assert classify(b, lo) is Verdict.CONVERGES

    def test_custom_finite_sequence_converges(self):
        b = CoeffSeq(np.r_[np.ones(10), np.zeros(90)], DecayClass("custom", tail=0.0))
        assert classify(b, 5.0) is Verdict.CONVERGES

    def test_too_short_custom_is_inconclusive(self):
        b = CoeffSeq([1.0, 0.5], DecayClass("custom", tail=0.1))
        assert classify_numeric(b, 1.0) is Verdict.INCONCLUSIVE


class TestNu2:
    def test_values(self):
        assert nu2_lower_bound(CoeffSeq.power_law(3, 64)) == 2.5
        assert nu2_lower_bound(CoeffSeq.geometric(0.5, 64)) == math.inf
        assert nu2_lower_bound(CoeffSeq.power_law(1, 64)) == 0.5
        assert nu2_lower_bound(CoeffSeq([1.0, 2.0])) == math.inf

    def test_custom_rejected(self):
        with pytest.raises(ValueError):
            nu2_lower_bound(CoeffSeq([1.0, 0.5], DecayClass("custom", tail=0.1)))

    def test_report(self):
        rep = smoothness_report(CoeffSeq.power_law(3, 64), [2.4, 2.6], N=1000)
        assert [r.verdict for r in rep.rows] == [Verdict.CONVERGES, Verdict.DIVERGES]
        assert rep.nu2_bound == 2.5
        assert rep.rows[0].partial_2N >= rep.rows[0].partial_N > 0


class TestSeriesOracles:
    def test_classic_is_zero_for_positive_s(self):
        for s in (0.5, 1.0, 7.0):
            assert series_partial(CoeffSeq([1.0, 0.0, 0.0]), s, 50) == 0.0

    def test_geometric_direct_summation(self):
        b = CoeffSeq.geometric(0.5, 64)
        direct = math.fsum(n ** 2 * 0.25 * 0.25 ** n for n in range(1, 21))
        assert series_partial(b, 1.0, 20) == pytest.approx(direct, rel=1e-14)
        assert classify_numeric(b, 1.0) is Verdict.CONVERGES

    def test_power_law_at_s3_terms_tend_to_one(self):
        b = CoeffSeq.power_law(3, 64)
        lo, hi = series_partial(b, 3.0, 5000), series_partial(b, 3.0, 10_000)
        assert hi - lo == pytest.approx(5000, rel=1e-3)
        assert classify_numeric(b, 3.0) is Verdict.DIVERGES

    @settings(max_examples=40, deadline=None)
    @given(st.floats(1.0, 4.0), st.floats(1e-3, 4), st.floats(0, 2), st.booleans())
    def test_partial_sum_nondecreasing_in_s(self, p, s, ds, negative):
        # the n = 0 term switches off at s = 0, so compare on one side of it
        b = CoeffSeq.power_law(p, 16)
        lo, hi = (-s - ds, -s) if negative else (s, s + ds)
        assert series_partial(b, hi, 200) >= series_partial(b, lo, 200) * (1 - 1e-12)

    def test_origin_term_drops_at_zero(self):
        b = CoeffSeq.power_law(2, 16)
        gap = series_partial(b, 0.0, 200) - series_partial(b, 1e-12, 200)
        assert gap == pytest.approx(1.0, rel=1e-9)
