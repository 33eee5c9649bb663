import math

import pytest
from hypothesis import given, strategies as st

from cyclescan import DegenerateSample, wilcoxon_signed_rank
from cyclescan.stats import EXACT, NORMAL_DROP, NORMAL_PRATT


class TestNormalApproximation:
    def test_six_distinct_same_sign_values_closed_form(self):
        # W+ = 21, mean = 10.5, var = 6*7*13/24 = 22.75
        res = wilcoxon_signed_rank([1, 2, 3, 4, 5, 6])
        assert res.w_plus == 21.0
        assert res.z == pytest.approx(10.5 / math.sqrt(22.75), abs=1e-12)
        assert res.z == pytest.approx(2.2014, abs=1e-4)
        assert res.p_two_tailed == pytest.approx(0.0277, abs=1e-4)
        assert res.n_effective == 6

    def test_tied_pair_shrinks_variance(self):
        # one tied pair: var = 22.75 - (2**3 - 2)/48 = 22.625
        res = wilcoxon_signed_rank([6, 4, 2, 4, 8, 1])
        assert res.w_plus == 21.0
        assert res.z == pytest.approx(10.5 / math.sqrt(22.625), abs=1e-12)
        assert res.p_two_tailed == pytest.approx(0.027, abs=1e-3)

    def test_all_negative_sample_gives_negative_z(self):
        res = wilcoxon_signed_rank([-52, -29, -43, -49, -40, -33])
        assert res.w_plus == 0.0
        assert res.z < 0
        assert res.p_two_tailed == pytest.approx(0.028, abs=1e-3)

    def test_pratt_keeps_zero_in_ranking(self):
        # zero takes rank 1; remaining ranks 2, 3.5, 3.5, 5, 6
        res = wilcoxon_signed_rank([3, 0, 3, 2, 9, 18], method="pratt")
        assert res.w_plus == 20.0
        assert res.method == NORMAL_PRATT
        assert res.n_effective == 5
        assert res.p_two_tailed == pytest.approx(0.035, abs=1e-3)

    def test_drop_discards_zero_differences(self):
        res = wilcoxon_signed_rank([3, 0, 3, 2, 9, 18], method="drop")
        assert res.method == NORMAL_DROP
        assert res.n_effective == 5
        assert res.w_plus == 15.0
        assert res.p_two_tailed == pytest.approx(0.042, abs=1e-3)

    def test_full_method_names_accepted(self):
        a = wilcoxon_signed_rank([1, 2, 3], method=NORMAL_PRATT)
        b = wilcoxon_signed_rank([1, 2, 3], method="pratt")
        assert a == b


class TestExact:
    def test_six_same_sign_no_ties_known_critical_value(self):
        res = wilcoxon_signed_rank([1, 2, 3, 4, 5, 6], method="exact")
        assert res.method == EXACT
        assert res.p_two_tailed == pytest.approx(2 / 64, abs=1e-12)

    def test_symmetric_sample_has_p_one(self):
        res = wilcoxon_signed_rank([-1, 2], method="exact")
        # W+ distribution over ranks {1, 2}: w_plus = 2, P(W >= 2) = 0.5
        assert res.p_two_tailed == 1.0

    def test_agrees_with_normal_approximation_roughly(self):
        values = [5, 11.5, 1.5, 13, 5.5, 11, -2, 7, 9, -4]
        exact = wilcoxon_signed_rank(values, method="exact")
        normal = wilcoxon_signed_rank(values, method="drop")
        assert exact.w_plus == normal.w_plus
        assert abs(exact.p_two_tailed - normal.p_two_tailed) < 0.02

    def test_zeros_dropped_before_enumeration(self):
        with_zero = wilcoxon_signed_rank([0, 1, 2, 3], method="exact")
        without = wilcoxon_signed_rank([1, 2, 3], method="exact")
        assert with_zero.p_two_tailed == without.p_two_tailed
        assert with_zero.n_effective == 3

    def test_large_sample_rejected(self):
        with pytest.raises(ValueError):
            wilcoxon_signed_rank(list(range(1, 23)), method="exact")


class TestDegenerateAndInvalid:
    def test_all_zero_sample(self):
        with pytest.raises(DegenerateSample):
            wilcoxon_signed_rank([0.0, 0.0, 0.0])

    def test_empty_sample(self):
        with pytest.raises(DegenerateSample):
            wilcoxon_signed_rank([])

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            wilcoxon_signed_rank([1, 2], method="bogus")


class TestInvariants:
    @given(
        st.lists(
            st.floats(-100, 100).filter(lambda v: abs(v) > 1e-6),
            min_size=1,
            max_size=15,
        ),
        st.sampled_from(["pratt", "drop", "exact"]),
    )
    def test_sign_antisymmetry(self, values, method):
        pos = wilcoxon_signed_rank(values, method)
        neg = wilcoxon_signed_rank([-v for v in values], method)
        assert neg.p_two_tailed == pytest.approx(pos.p_two_tailed, rel=1e-12)
        assert neg.z == pytest.approx(-pos.z, rel=1e-12, abs=1e-12)

    @given(
        st.lists(
            st.integers(-500, 500).filter(bool).map(lambda n: n / 10.0),
            min_size=1,
            max_size=12,
        ),
        st.floats(0.001, 1000),
    )
    def test_scale_invariance(self, values, factor):
        base = wilcoxon_signed_rank(values)
        scaled = wilcoxon_signed_rank([v * factor for v in values])
        assert scaled.w_plus == base.w_plus
        assert scaled.z == base.z
        assert scaled.p_two_tailed == base.p_two_tailed

    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=12))
    def test_p_is_a_probability(self, values):
        try:
            res = wilcoxon_signed_rank(values)
        except DegenerateSample:
            return
        assert 0.0 <= res.p_two_tailed <= 1.0
