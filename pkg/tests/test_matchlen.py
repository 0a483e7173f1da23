"""Match lengths and the match-length Shannon rate estimator.

Every frozen value here was computed by the brute-force scanning oracle,
which shares no code with the suffix-array fast path; the two routes are
also cross-checked property-style on random inputs.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npdentropy.core import InsufficientDataError, UndefinedEstimateError
from npdentropy.matchlen import (
    MIN_SERIES_LENGTH,
    match_length_at,
    match_lengths,
    match_lengths_oracle,
    rate_from_lengths,
    shannon_rate_ml,
    shannon_rate_ml_oracle,
)
from npdentropy.quantizer import QuantizerConfig, quantize

symbol_arrays = st.lists(st.integers(0, 7), min_size=2, max_size=64).map(
    lambda xs: np.asarray(xs, dtype=np.int64)
)
rateable_arrays = st.lists(
    st.integers(0, 7), min_size=MIN_SERIES_LENGTH, max_size=64
).map(lambda xs: np.asarray(xs, dtype=np.int64))


class TestKnownLengths:
    def test_five_symbol_example(self):
        assert match_lengths([0, 1, 0, 1, 1]).tolist() == [3, 2, 3, 2, 2]

    def test_five_symbol_example_oracle(self):
        assert match_lengths_oracle([0, 1, 0, 1, 1]).tolist() == [3, 2, 3, 2, 2]

    def test_all_unique_gives_ones(self):
        assert match_lengths([4, 9, 1, 7, 0]).tolist() == [1, 1, 1, 1, 1]

    def test_constant_hits_the_window_cap(self):
        # longest feasible prefix everywhere: 1 + lcp with the best other
        # suffix, which for a constant run is bounded by the window edge
        assert match_lengths([7, 7, 7, 7]).tolist() == [4, 4, 3, 2]

    def test_accepts_symbol_series(self):
        series = quantize([0.1, 1.1, 0.2, 1.2, 1.3], QuantizerConfig(delta=1.0))
        assert match_lengths(series).tolist() == [3, 2, 3, 2, 2]

    def test_rejects_float_symbols(self):
        with pytest.raises(ValueError, match="integers"):
            match_lengths(np.array([0.5, 1.5]))


class TestMatchLengthAt:
    def test_agrees_with_vector_form(self):
        rng = np.random.default_rng(3)
        x = rng.integers(0, 3, size=40)
        lengths = match_lengths(x)
        for i in range(len(x)):
            assert match_length_at(x, i) == lengths[i]

    def test_window_shorter_than_series(self):
        # restricting to the first 5 symbols reproduces the small example
        x = [0, 1, 0, 1, 1, 9, 9, 9]
        assert [match_length_at(x, i, n=5) for i in range(5)] == [3, 2, 3, 2, 2]

    def test_position_out_of_window(self):
        with pytest.raises(IndexError):
            match_length_at([0, 1, 0, 1], 4)

    def test_window_out_of_range(self):
        with pytest.raises(ValueError):
            match_length_at([0, 1], 0, n=0)
        with pytest.raises(ValueError):
            match_length_at([0, 1], 0, n=3)


class TestOracleEquivalence:
    @given(symbol_arrays)
    @settings(max_examples=200)
    def test_lengths_match_exactly(self, x):
        assert np.array_equal(match_lengths(x), match_lengths_oracle(x))

    @given(rateable_arrays)
    def test_rates_match_exactly(self, x):
        try:
            fast = shannon_rate_ml(x)
        except UndefinedEstimateError:
            with pytest.raises(UndefinedEstimateError):
                shannon_rate_ml_oracle(x)
            return
        assert fast == shannon_rate_ml_oracle(x)

    def test_constant_length_32_parity(self):
        x = np.full(32, 5, dtype=np.int64)
        assert shannon_rate_ml(x) == shannon_rate_ml_oracle(x)
        assert shannon_rate_ml(x) > 0


class TestRateFromLengths:
    def test_small_example_value(self):
        # n = 5, sum(L_i - 1) = 7
        expected = 5 * math.log(5) / 7
        assert rate_from_lengths([3, 2, 3, 2, 2]) == pytest.approx(expected, rel=1e-15)

    def test_no_matches_is_undefined(self):
        with pytest.raises(UndefinedEstimateError):
            rate_from_lengths([1] * 20)

    def test_all_distinct_series_is_undefined(self):
        with pytest.raises(UndefinedEstimateError):
            shannon_rate_ml(np.arange(20))

    def test_short_series_gated(self):
        with pytest.raises(InsufficientDataError):
            shannon_rate_ml([0, 1] * 7)  # 14 < 16

    def test_gate_boundary(self):
        assert shannon_rate_ml([0, 1] * 8) > 0  # exactly 16


class TestStatisticalBehaviour:
    def test_bernoulli_half_recovers_ln2(self):
        rng = np.random.default_rng(12345)
        x = rng.integers(0, 2, size=100_000)
        assert shannon_rate_ml(x) == pytest.approx(math.log(2), abs=0.05)

    def test_rate_grows_with_alphabet(self):
        # iid uniform over k symbols has rate ln k; the estimates must
        # preserve that ordering on average
        means = []
        for k in (2, 4, 8):
            vals = [
                shannon_rate_ml(np.random.default_rng(100 + s).integers(0, k, 4000))
                for s in range(10)
            ]
            means.append(np.mean(vals))
        assert means[0] < means[1] < means[2]

    @given(symbol_arrays, st.permutations(list(range(8))))
    @settings(max_examples=60)
    def test_relabelling_keeps_lengths(self, x, perm):
        relabelled = np.asarray(perm, dtype=np.int64)[x]
        assert np.array_equal(match_lengths(x), match_lengths(relabelled))

    def test_negative_symbols_fine(self):
        x = np.array([0, 1, 0, 1, 1]) - 7
        assert match_lengths(x).tolist() == [3, 2, 3, 2, 2]
