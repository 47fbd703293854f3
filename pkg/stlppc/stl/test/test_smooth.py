import pytest
from numpy import inf, log
from numpy.random import RandomState
from numpy.testing import assert_allclose

from stlppc.stl import SmoothMinConfig, smooth_min


def test_smooth_min_equal_values():
    for rho in [-3.0, 0.0, 2.5, 1e3]:
        for eta in [0.5, 10.0, 100.0]:
            value, weights = smooth_min([rho, rho], eta)
            assert_allclose(value, rho - log(2) / eta)
            assert_allclose(weights, [0.5, 0.5])


def test_smooth_min_single_value():
    value, weights = smooth_min([3.25], 10.0)
    assert value == 3.25
    assert_allclose(weights, [1.0])


def test_smooth_min_two_values():
    value, weights = smooth_min([0.0, 10.0], 10.0)
    assert -log(2) / 10 <= value <= 0
    assert weights[0] > 0.99


def test_smooth_min_bounds_random():
    random = RandomState(0)
    for _ in range(1000):
        n = random.randint(1, 8)
        eta = 10 ** random.uniform(-1, 2)
        v = random.randn(n) * 10 ** random.uniform(-2, 3)
        value, weights = smooth_min(v, eta)
        assert value <= v.min()
        assert v.min() - value <= log(n) / eta
        assert (weights >= 0).all()
        assert_allclose(weights.sum(), 1)


def test_smooth_min_overflow():
    value, weights = smooth_min([1e5, 2e5, 3e5], 100.0)
    assert_allclose(value, 1e5)
    assert_allclose(weights, [1, 0, 0])


def test_smooth_min_infinite_entries():
    value, weights = smooth_min([2.0, inf], 10.0)
    assert_allclose(value, 2.0)
    assert_allclose(weights, [1, 0])

    value, _ = smooth_min([inf, inf], 10.0)
    assert value == inf


def test_smooth_min_errors():
    with pytest.raises(ValueError):
        smooth_min([], 10.0)

    with pytest.raises(ValueError):
        smooth_min([1.0], 0.0)

    with pytest.raises(ValueError):
        SmoothMinConfig(-1.0)
