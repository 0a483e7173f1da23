"""Uniform-width binning of real series into integer symbols."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from npdentropy.quantizer import QuantizerConfig, SymbolSeries, quantize

finite_floats = st.floats(-1e9, 1e9, allow_nan=False, allow_infinity=False)
# values on the 1/64 grid survive shifts and doublings without rounding
dyadic_values = st.lists(
    st.integers(-512, 512).map(lambda k: k / 64.0), min_size=1, max_size=40
)


class TestKnownBins:
    def test_unit_width(self):
        s = quantize([0.2, 1.7, -0.3], QuantizerConfig(delta=1.0))
        assert s.symbols.tolist() == [0, 1, -1]

    def test_half_width(self):
        s = quantize([0.2, 1.7, -0.3], QuantizerConfig(delta=0.5))
        assert s.symbols.tolist() == [0, 3, -1]

    def test_shifted_origin(self):
        s = quantize([0.2, 1.7, -0.3], QuantizerConfig(delta=1.0, origin=1.0))
        assert s.symbols.tolist() == [-1, 0, -2]

    def test_boundary_lands_in_upper_cell(self):
        s = quantize([0.0, 1.0, 2.0], QuantizerConfig(delta=1.0))
        assert s.symbols.tolist() == [0, 1, 2]


class TestContainment:
    @given(
        st.lists(finite_floats, min_size=1, max_size=30),
        st.sampled_from([1 / 3, 0.5, 1.0, 2.0, 3.0, 1e-3, 1e3]),
        st.floats(-1e6, 1e6),
    )
    def test_every_sample_inside_its_cell(self, xs, delta, origin):
        config = QuantizerConfig(delta=delta, origin=origin)
        s = quantize(xs, config).symbols
        x = np.asarray(xs, dtype=np.float64)
        assert np.all(origin + s * delta <= x), "sample below its cell"
        assert np.all(x < origin + (s + 1) * delta), "sample at or above cell top"

    @given(st.lists(finite_floats, min_size=2, max_size=30))
    def test_monotone_in_value(self, xs):
        x = np.sort(np.asarray(xs, dtype=np.float64))
        s = quantize(x, QuantizerConfig(delta=0.7)).symbols
        assert np.all(np.diff(s) >= 0)


class TestEquivariance:
    @given(dyadic_values, st.integers(-5, 5), st.sampled_from([0.25, 0.5, 1.0, 2.0]))
    def test_shift_by_whole_cells(self, xs, k, delta):
        # k * delta is exact for dyadic deltas, so symbols shift exactly by k
        config = QuantizerConfig(delta=delta)
        base = quantize(xs, config).symbols
        shifted = quantize(np.asarray(xs) + k * delta, config).symbols
        assert np.array_equal(shifted, base + k)

    @given(dyadic_values)
    def test_doubling_values_and_width(self, xs):
        x = np.asarray(xs, dtype=np.float64)
        base = quantize(x, QuantizerConfig(delta=0.5)).symbols
        scaled = quantize(2.0 * x, QuantizerConfig(delta=1.0)).symbols
        assert np.array_equal(scaled, base)

    @given(dyadic_values, st.integers(-4, 4))
    def test_origin_shift_matches_value_shift(self, xs, k):
        x = np.asarray(xs, dtype=np.float64)
        moved_origin = quantize(x, QuantizerConfig(delta=0.5, origin=-k * 0.5)).symbols
        moved_values = quantize(x + k * 0.5, QuantizerConfig(delta=0.5)).symbols
        assert np.array_equal(moved_origin, moved_values)


class TestValidation:
    def test_zero_delta_rejected(self):
        with pytest.raises(ValueError):
            QuantizerConfig(delta=0.0)

    def test_negative_delta_rejected(self):
        with pytest.raises(ValueError):
            QuantizerConfig(delta=-1.0)

    def test_non_finite_origin_rejected(self):
        with pytest.raises(ValueError):
            QuantizerConfig(delta=1.0, origin=float("inf"))

    def test_non_finite_sample_rejected_with_index(self):
        with pytest.raises(ValueError, match="index 1"):
            quantize([0.0, float("nan")], QuantizerConfig(delta=1.0))

    def test_symbols_read_only(self):
        s = quantize([0.5, 1.5], QuantizerConfig(delta=1.0))
        with pytest.raises(ValueError):
            s.symbols[0] = 9

    def test_len(self):
        s = quantize([0.5, 1.5, 2.5], QuantizerConfig(delta=1.0))
        assert len(s) == 3
        assert isinstance(s, SymbolSeries)
