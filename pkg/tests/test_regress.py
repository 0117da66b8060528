import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairdisc import DegenerateRegressorError, ValidationError, ols_fit


def test_exact_line():
    fit = ols_fit([1.0, 2.0, 3.0], [2.0, 4.0, 6.0])
    assert fit.slope == pytest.approx(2.0, abs=1e-12)
    assert fit.intercept == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(fit.residuals, 0.0, atol=1e-12)


def test_constant_effect():
    fit = ols_fit([1.0, 2.0, 3.0], [5.0, 5.0, 5.0])
    assert fit.slope == pytest.approx(0.0, abs=1e-12)
    assert fit.intercept == pytest.approx(5.0, abs=1e-12)
    np.testing.assert_allclose(fit.residuals, 0.0, atol=1e-12)


def test_hand_computed_normal_equations():
    # cov = 3/4, var = 5/4 -> slope 0.6; intercept = 2 - 0.6 * 1.5 = 1.1
    fit = ols_fit([0.0, 1.0, 2.0, 3.0], [1.0, 2.0, 2.0, 3.0])
    assert fit.slope == pytest.approx(0.6, abs=1e-12)
    assert fit.intercept == pytest.approx(1.1, abs=1e-12)
    np.testing.assert_allclose(fit.residuals, [-0.1, 0.3, -0.3, 0.1], atol=1e-12)


def test_constant_cause_raises():
    with pytest.raises(DegenerateRegressorError):
        ols_fit([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])


def test_length_mismatch_raises():
    with pytest.raises(ValidationError):
        ols_fit([1.0, 2.0, 3.0], [1.0, 2.0])


def test_too_short_raises():
    with pytest.raises(ValidationError):
        ols_fit([1.0, 2.0], [1.0, 2.0])


def test_residuals_mean_zero_and_uncorrelated():
    rng = np.random.default_rng(11)
    x = rng.random(500)
    y = 2.5 * x + rng.random(500)
    fit = ols_fit(x, y)
    assert abs(fit.residuals.mean()) < 1e-9
    r = np.corrcoef(x, fit.residuals)[0, 1]
    assert abs(r) < 1e-9


@given(
    alpha=st.floats(min_value=0.01, max_value=100.0),
    beta=st.floats(min_value=-50.0, max_value=50.0),
    flip=st.booleans(),
    seed=st.integers(0, 2**32 - 1),
)
@settings(max_examples=40, deadline=None)
def test_residuals_invariant_under_affine_cause(alpha, beta, flip, seed):
    rng = np.random.default_rng(seed)
    x = rng.random(100)
    y = x + rng.random(100)
    a = -alpha if flip else alpha
    base = ols_fit(x, y)
    moved = ols_fit(a * x + beta, y)
    np.testing.assert_allclose(base.residuals, moved.residuals, atol=1e-9)


@given(
    b=st.floats(min_value=-1e3, max_value=1e3),
    c=st.floats(min_value=-1e3, max_value=1e3),
    seed=st.integers(0, 2**32 - 1),
)
@settings(max_examples=40, deadline=None)
def test_exact_linear_relation_zero_residuals(b, c, seed):
    x = np.random.default_rng(seed).random(50)
    fit = ols_fit(x, b * x + c)
    np.testing.assert_allclose(fit.residuals, 0.0, atol=1e-9 * max(1.0, abs(b), abs(c)))


def test_residual_sum_scales_with_effect_magnitude():
    rng = np.random.default_rng(3)
    x = rng.random(200)
    y = 1e6 * (x + rng.random(200))
    fit = ols_fit(x, y)
    n = len(x)
    assert abs(fit.residuals.sum()) < 1e-9 * n * np.abs(y).max()
