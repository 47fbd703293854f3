import pytest
from numpy import array, eye, zeros
from numpy.random import RandomState
from numpy.testing import assert_allclose, assert_equal

from stlppc.stl import Predicate, eval_predicate, grad_predicate


def _fd(pred, xs, agent, h=1e-6):
    x = array(xs[agent], float)
    g = zeros(x.shape[0])
    for c in range(x.shape[0]):
        xp = dict(xs)
        xm = dict(xs)
        xp[agent] = x.copy()
        xm[agent] = x.copy()
        xp[agent][c] += h
        xm[agent][c] -= h
        g[c] = (pred.value(xp) - pred.value(xm)) / (2 * h)
    return g


def test_predicate_norm2_le_values():
    p = Predicate("norm2_le", {1: eye(2), 2: -eye(2)}, offset=[0, 0], radius_sq=26.75)
    x = array([0.3, -1.2])
    assert_allclose(eval_predicate(p, {1: x, 2: x}), 26.75)

    p = Predicate("norm2_le", {1: 1.0}, offset=[0, 2], radius_sq=7)
    assert_allclose(eval_predicate(p, {1: [0, 2]}), 7)
    assert_allclose(eval_predicate(p, {1: [1, 2]}), 6)


def test_predicate_linear_values():
    p = Predicate("linear", {1: [1, 0]}, bias=0)
    assert_allclose(eval_predicate(p, {1: [3, 7]}), 3)
    assert_equal(grad_predicate(p, {1: [3, 7]}, 1), [1, 0])
    assert_equal(grad_predicate(p, {1: [-30, 2]}, 1), [1, 0])


def test_predicate_agents_sorted():
    p = Predicate("norm2_le", {3: 1.0, 1: -1.0}, offset=[0, 0], radius_sq=1)
    assert_equal(p.agents, (1, 3))
    assert p.reads(3)
    assert not p.reads(2)


def test_predicate_gradient_zero_at_maximum():
    p = Predicate("norm2_le", {1: 2.0, 2: -1.0}, offset=[1, 1], radius_sq=3)
    xs = {1: [1.0, 1.0], 2: [1.0, 1.0]}
    assert_allclose(grad_predicate(p, xs, 1), [0, 0])
    assert_allclose(grad_predicate(p, xs, 2), [0, 0])


def test_predicate_gradient_absent_agent():
    p = Predicate("norm2_le", {1: 1.0}, offset=[0, 0], radius_sq=3)
    assert_equal(grad_predicate(p, {1: [1.0, 1.0], 5: [2.0, 2.0]}, 5), [0, 0])


def test_predicate_gradient_finite_differences():
    random = RandomState(0)
    for _ in range(50):
        C1 = random.randn(3, 2)
        C2 = random.randn(3, 2)
        d = random.randn(3)
        p = Predicate("norm2_le", {1: C1, 2: C2}, offset=d, radius_sq=4.0)
        xs = {1: random.randn(2) * 3, 2: random.randn(2) * 3}
        for a in (1, 2):
            g = grad_predicate(p, xs, a)
            assert_allclose(g, _fd(p, xs, a), rtol=1e-5, atol=1e-7)


def test_predicate_norm2_le_bounded_by_radius():
    random = RandomState(1)
    p = Predicate("norm2_le", {1: 1.0, 2: -0.5}, offset=[0.5, -1], radius_sq=7)
    for _ in range(200):
        xs = {1: random.randn(2), 2: random.randn(2)}
        assert p.value(xs) <= 7


def test_predicate_errors():
    p = Predicate("norm2_le", {1: 1.0, 2: -1.0}, offset=[0, 0], radius_sq=1)

    with pytest.raises(ValueError):
        p.value({1: [0, 0]})

    with pytest.raises(ValueError):
        p.value({1: [0, 0], 2: [0, 0, 0]})

    with pytest.raises(ValueError):
        Predicate("norm2_le", {1: 1.0}, offset=[0, 0], radius_sq=0)

    with pytest.raises(ValueError):
        Predicate("linear", {1: [0, 0]})

    with pytest.raises(ValueError):
        Predicate("circle", {1: [1, 0]})


def test_predicate_bound():
    p = Predicate.bound({2: 2, 1: 2}, 3.0)
    assert_equal(p.agents, (1, 2))
    assert_allclose(p.value({1: [1, 0], 2: [0, 2]}), 9 - 5)
    assert_allclose(p.gradient({1: [1, 0], 2: [0, 2]}, 2), [0, -4])
    assert_allclose(p.coeff_norm(1), 1)


def test_predicate_coeff_norm():
    p = Predicate("linear", {1: [1, -2], 2: [0.5, 0]})
    assert_allclose(p.coeff_norm(1), 3)
    assert_allclose(p.coeff_norm(2), 0.5)

    p = Predicate("norm2_le", {1: [[3, 0], [0, 1]]}, offset=[0, 0], radius_sq=1)
    assert_allclose(p.coeff_norm(1), 3)
