import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pairdisc
from pairdisc import (
    DEFAULT_TEST_POLICY,
    ObservationSeries,
    PairType,
    ValidationError,
    VarType,
    infer_pair_type,
    infer_var_type,
    select_test,
    variable_pair,
)


class TestObservationSeries:
    def test_rejects_short(self):
        with pytest.raises(ValidationError):
            ObservationSeries([1.0])

    def test_rejects_nan_and_inf(self):
        with pytest.raises(ValidationError):
            ObservationSeries([1.0, float("nan")])
        with pytest.raises(ValidationError):
            ObservationSeries([1.0, float("inf")])

    def test_values_frozen(self):
        s = ObservationSeries([1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            s.values[0] = 9.0


class TestInferVarType:
    def test_binary(self):
        assert infer_var_type(np.array([0, 1, 1, 0, 1.0])) is VarType.BINARY

    def test_binary_non_integer_levels(self):
        assert infer_var_type(np.array([0.5, 1.5, 0.5, 1.5])) is VarType.BINARY

    def test_categorical_three_levels(self):
        values = np.array([1.0, 2.0, 3.0] * 34)[:100]
        assert infer_var_type(values) is VarType.CATEGORICAL

    def test_uniform_sample_is_numerical(self):
        values = np.random.default_rng(5).random(1000)
        assert infer_var_type(values) is VarType.NUMERICAL

    def test_short_integer_series_not_categorical(self):
        # 3 distinct integers but n=6: ceil(6/10) = 1 level allowed
        assert infer_var_type(np.array([1.0, 2.0, 3.0, 1.0, 2.0, 3.0])) is VarType.NUMERICAL

    def test_non_integer_many_levels_numerical(self):
        values = np.array([0.1, 0.2, 0.3] * 40)
        assert infer_var_type(values) is VarType.NUMERICAL

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_permutation_invariant(self, seed):
        rng = np.random.default_rng(seed)
        values = rng.integers(0, 5, size=60).astype(float)
        shuffled = rng.permutation(values)
        assert infer_var_type(values) is infer_var_type(shuffled)


class TestInferPairType:
    @pytest.mark.parametrize("a,b", list(itertools.product(VarType, VarType)))
    def test_symmetric(self, a, b):
        assert infer_pair_type(a, b) is infer_pair_type(b, a)

    def test_both_numerical(self):
        assert infer_pair_type(VarType.NUMERICAL, VarType.NUMERICAL) is PairType.NUMERICAL

    @pytest.mark.parametrize("other", [VarType.BINARY, VarType.CATEGORICAL])
    def test_one_numerical_is_mixed(self, other):
        assert infer_pair_type(other, VarType.NUMERICAL) is PairType.MIXED

    def test_both_binary(self):
        assert infer_pair_type(VarType.BINARY, VarType.BINARY) is PairType.BINARY

    def test_discrete_mix_is_categorical(self):
        assert infer_pair_type(VarType.CATEGORICAL, VarType.BINARY) is PairType.CATEGORICAL
        assert infer_pair_type(VarType.CATEGORICAL, VarType.CATEGORICAL) is PairType.CATEGORICAL


class TestSelectTest:
    @pytest.mark.parametrize("pair_type", list(PairType))
    def test_total_function(self, pair_type):
        assert select_test(pair_type) in pairdisc.TestKind

    def test_default_policy(self):
        assert select_test(PairType.CATEGORICAL) is pairdisc.TestKind.TIC
        assert select_test(PairType.BINARY) is pairdisc.TestKind.TIC
        assert select_test(PairType.NUMERICAL) is pairdisc.TestKind.CHI2
        assert select_test(PairType.MIXED) is pairdisc.TestKind.CHI2

    def test_policy_override(self):
        assert select_test(PairType.NUMERICAL, {PairType.NUMERICAL: pairdisc.TestKind.TIC}) is pairdisc.TestKind.TIC
        # partial overrides leave other types on the default
        assert select_test(PairType.BINARY, {PairType.NUMERICAL: pairdisc.TestKind.TIC}) is pairdisc.TestKind.TIC

    def test_default_policy_complete(self):
        assert set(DEFAULT_TEST_POLICY) == set(PairType)


class TestVariablePair:
    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            variable_pair([1.0, 2.0], [1.0, 2.0, 3.0])

    def test_infers_pair_type(self):
        rng = np.random.default_rng(0)
        pair = variable_pair(rng.random(50), rng.integers(0, 2, 50).astype(float))
        assert pair.pair_type is PairType.MIXED
        assert pair.n == 50
