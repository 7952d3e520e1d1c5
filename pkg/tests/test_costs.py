import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import array_shapes, arrays

from epipocs.costs import (
    Entropic,
    FilteredVariation,
    L1Norm,
    ScaledCost,
    TotalVariation,
    entropic_subgradient,
    entropic_value,
    fv_subgradient,
    fv_value,
    l1_subgradient,
    l1_value,
    make_cost,
    tv_subgradient,
    tv_value,
)
from epipocs.errors import DomainError

signals = arrays(np.float64, array_shapes(min_dims=1, max_dims=2, min_side=2, max_side=6),
                 elements=st.floats(-100, 100, allow_nan=False))


def naive_tv(w):
    w = np.atleast_1d(w)
    total = 0.0
    if w.ndim == 1:
        for i in range(len(w) - 1):
            total += abs(w[i + 1] - w[i])
        return total
    rows, cols = w.shape
    for i in range(rows):
        for j in range(cols):
            if i + 1 < rows:
                total += abs(w[i + 1, j] - w[i, j])
            if j + 1 < cols:
                total += abs(w[i, j + 1] - w[i, j])
    return total


def difference_matrix(n):
    d = np.zeros((n - 1, n))
    for i in range(n - 1):
        d[i, i], d[i, i + 1] = -1.0, 1.0
    return d


def fd_directional(f, w, u, eps=1e-6):
    return (f(w + eps * u) - f(w - eps * u)) / (2 * eps)


def test_tv_examples():
    assert tv_value(np.full(7, 2.5)) == 0.0
    assert tv_value([0.0, 1.0, 0.0]) == 2.0
    assert tv_value([[0.0, 1.0], [0.0, 1.0]]) == 2.0
    np.testing.assert_array_equal(tv_subgradient(np.full(4, 1.0)), 0.0)
    np.testing.assert_array_equal(tv_subgradient([0.0, 1.0, 0.0]), [-1.0, 2.0, -1.0])


def test_tv_subgradient_matches_matrix_form(rng):
    for n in (2, 5, 9):
        w = rng.normal(size=n)
        d = difference_matrix(n)
        np.testing.assert_allclose(tv_subgradient(w), d.T @ np.sign(d @ w))


@settings(max_examples=100, deadline=None)
@given(signals)
def test_tv_matches_naive_loop(w):
    assert tv_value(w) == pytest.approx(naive_tv(w), rel=1e-12, abs=1e-9)


def test_fv_examples():
    assert fv_value([0.0, 1.0, 0.0], (1.0, -2.0, 1.0)) == 2.0
    assert fv_value([0.0, 1.0, 2.0, 3.0], (1.0, -2.0, 1.0)) == 0.0
    with pytest.raises(ValueError):
        fv_value([0.0, 1.0], (1.0, -2.0, 1.0))
    with pytest.raises(ValueError):
        fv_value([0.0, 1.0], (1.0,))
    with pytest.raises(ValueError):
        FilteredVariation((1.0, -2.0, 1.0)).check_domain(np.zeros((2, 5)))


@settings(max_examples=100, deadline=None)
@given(signals)
def test_fv_first_difference_equals_tv(w):
    assert fv_value(w, (1.0, -1.0)) == pytest.approx(tv_value(w), rel=1e-12, abs=1e-12)
    np.testing.assert_array_equal(fv_subgradient(w, (1.0, -1.0)), tv_subgradient(w))


def test_fv_subgradient_matches_matrix_form(rng):
    h = np.array([1.0, -2.0, 1.0])
    w = rng.normal(size=8)
    mat = np.zeros((6, 8))
    for k in range(6):
        mat[k, k:k + 3] = h
    assert fv_value(w, h) == pytest.approx(np.abs(mat @ w).sum())
    np.testing.assert_allclose(fv_subgradient(w, h), mat.T @ np.sign(mat @ w))


def test_l1_examples(rng):
    assert l1_value([0.0, 0.0, 0.0]) == 0.0
    np.testing.assert_array_equal(l1_subgradient([0.0, 0.0, 0.0]), 0.0)
    assert l1_value([3.0, -4.0]) == 7.0
    np.testing.assert_array_equal(l1_subgradient([3.0, -4.0]), [1.0, -1.0])
    w = rng.normal(size=50)
    total = 0.0
    for x in w:
        total += abs(x)
    assert l1_value(w) == pytest.approx(total)


def test_entropic_examples():
    assert entropic_value(np.ones(4)) == 0.0
    np.testing.assert_array_equal(entropic_subgradient(np.ones(4)), 0.0)
    assert entropic_value([np.e]) == pytest.approx(1.0)
    np.testing.assert_allclose(entropic_subgradient([np.e]), [1.0])


def test_entropic_domain_error_names_index():
    with pytest.raises(DomainError) as info:
        entropic_value([1.0, 2.0, 0.0, 3.0])
    assert info.value.index == 2
    assert "2" in str(info.value)
    with pytest.raises(DomainError):
        Entropic().check_domain(np.array([[1.0, -1.0]]))


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        tv_value([1.0, np.nan])
    with pytest.raises(ValueError):
        l1_value(np.zeros((2, 2, 2)))


COSTS = [TotalVariation(), FilteredVariation((1.0, -2.0, 1.0)), L1Norm(), Entropic()]


def _sample(cost, rng, shape):
    if cost.positive_domain:
        return rng.uniform(0.05, 5.0, shape)
    return rng.normal(scale=3.0, size=shape)


@pytest.mark.parametrize("cost", COSTS, ids=lambda c: c.name)
@pytest.mark.parametrize("shape", [(7,), (4, 5)])
def test_supporting_inequality(cost, shape, rng):
    for _ in range(200):
        v, u = _sample(cost, rng, shape), _sample(cost, rng, shape)
        g = cost.subgradient(v)
        assert cost.value(u) >= cost.value(v) + np.sum(g * (u - v)) - 1e-9


@pytest.mark.parametrize("cost", COSTS, ids=lambda c: c.name)
def test_convexity(cost, rng):
    for _ in range(200):
        w, u = _sample(cost, rng, (3, 4)), _sample(cost, rng, (3, 4))
        t = rng.uniform()
        lhs = cost.value(t * w + (1 - t) * u)
        assert lhs <= t * cost.value(w) + (1 - t) * cost.value(u) + 1e-9
        if not cost.positive_domain:
            assert cost.value(w) >= 0


@pytest.mark.parametrize("cost", COSTS, ids=lambda c: c.name)
def test_finite_difference_agreement(cost, rng):
    # random continuous samples are smooth points with probability one
    for _ in range(50):
        w = _sample(cost, rng, (5, 6))
        u = rng.normal(size=w.shape)
        assert fd_directional(cost.value, w, u) == pytest.approx(np.sum(cost.subgradient(w) * u), abs=1e-5, rel=1e-7)


def test_scaled_cost(rng):
    base = TotalVariation()
    scaled = ScaledCost(base, 0.5)
    w = rng.normal(size=(3, 3))
    assert scaled(w) == pytest.approx(0.5 * base(w))
    np.testing.assert_allclose(scaled.subgradient(w), 0.5 * base.subgradient(w))
    with pytest.raises(ValueError):
        ScaledCost(base, 0.0)


def test_make_cost():
    assert isinstance(make_cost("tv"), TotalVariation)
    assert isinstance(make_cost("FV", (1.0, -2.0, 1.0)), FilteredVariation)
    assert isinstance(make_cost("l1"), L1Norm)
    assert isinstance(make_cost("entropic"), Entropic)
    with pytest.raises(ValueError):
        make_cost("huber")
