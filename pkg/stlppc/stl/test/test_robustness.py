import pytest
from numpy import array, log, nan, zeros
from numpy.random import RandomState
from numpy.testing import assert_allclose

from stlppc.stl import (
    Atom,
    Conj,
    Predicate,
    SmoothMinConfig,
    eval_robustness,
    exact_robustness,
    grad_predicate,
    grad_robustness,
    parse_formula,
    robustness_and_gradients,
)


def _fd(body, xs, agent, cfg, h=1e-6):
    x = array(xs[agent], float)
    g = zeros(x.shape[0])
    for c in range(x.shape[0]):
        xp = dict(xs)
        xm = dict(xs)
        xp[agent] = x.copy()
        xm[agent] = x.copy()
        xp[agent][c] += h
        xm[agent][c] -= h
        g[c] = (eval_robustness(body, xp, cfg) - eval_robustness(body, xm, cfg)) / (2 * h)
    return g


def _random_predicate(random, agents):
    if random.rand() < 0.7:
        coeffs = {a: random.randn(2, 2) for a in agents}
        return Predicate(
            "norm2_le", coeffs, offset=random.randn(2), radius_sq=random.uniform(1, 30)
        )
    coeffs = {a: random.randn(2) for a in agents}
    return Predicate("linear", coeffs, bias=random.randn())


def test_robustness_single_predicate():
    p = Predicate("norm2_le", {1: 1.0}, offset=[0, 2], radius_sq=7)
    xs = {1: array([1.0, 0.5])}
    assert_allclose(eval_robustness(Atom("p", p), xs), p.value(xs))
    assert_allclose(grad_robustness(Atom("p", p), xs, 1), grad_predicate(p, xs, 1))


def test_robustness_duplicate_conjunct():
    p = Predicate("norm2_le", {1: 1.0}, offset=[0, 2], radius_sq=7)
    xs = {1: array([1.0, 0.5])}
    cfg = SmoothMinConfig(10.0)
    body = Conj((Atom("p", p), Atom("p", p)))
    assert_allclose(eval_robustness(body, xs, cfg), p.value(xs) - log(2) / 10)


def test_robustness_negation():
    p = Predicate("linear", {1: [1.0, 2.0]}, bias=-1.0)
    xs = {1: array([1.0, 3.0])}
    body = Atom("p", p, negated=True)
    assert_allclose(eval_robustness(body, xs), -6.0)
    assert_allclose(grad_robustness(body, xs, 1), [-1.0, -2.0])


def test_robustness_below_exact_min():
    table = {
        "p1": Predicate("norm2_le", {2: 1.0, 3: -1.0}, offset=[0, 0], radius_sq=26.75),
        "p2": Predicate("norm2_le", {2: 1.0, 4: -1.0}, offset=[0, 0], radius_sq=70.05),
        "p3": Predicate("norm2_le", {2: 1.0, 5: -1.0}, offset=[0, 0], radius_sq=70.05),
    }
    phi = parse_formula("G[1,2](p1 && p2 && p3)", table)
    xs = {
        2: array([0.025, 0.812]),
        3: array([0.325, -1.618]),
        4: array([-0.1, 0.532]),
        5: array([1.9, -0.882]),
    }
    exact = min(p.value(xs) for p in table.values())
    assert_allclose(exact_robustness(phi.body, xs), exact)
    assert eval_robustness(phi.body, xs, 10.0) <= exact


def test_robustness_absent_agent():
    p = Predicate("norm2_le", {1: 1.0}, offset=[0, 2], radius_sq=7)
    q = Predicate("linear", {2: [1.0, 0.0]})
    body = Conj((Atom("p", p), Atom("q", q)))
    xs = {1: array([1.0, 0.5]), 2: array([1.0, 1.0]), 3: array([4.0, 4.0])}
    assert_allclose(grad_robustness(body, xs, 3), [0, 0])


def test_robustness_gradient_finite_differences():
    random = RandomState(3)
    cfg = SmoothMinConfig(2.0)
    for _ in range(100):
        preds = [_random_predicate(random, [1, 2]) for _ in range(3)]
        terms = tuple(Atom(f"p{i}", p, negated=random.rand() < 0.2) for i, p in enumerate(preds))
        body = Conj(terms)
        xs = {1: random.randn(2) * 2, 2: random.randn(2) * 2}
        for a in (1, 2):
            g = grad_robustness(body, xs, a, cfg)
            fd = _fd(body, xs, a, cfg)
            assert_allclose(g, fd, rtol=1e-5, atol=1e-6)


def test_robustness_missing_state():
    p = Predicate("norm2_le", {1: 1.0, 2: -1.0}, offset=[0.0, 0.0], radius_sq=4.0)
    body = Atom("p", p)
    xs = {1: [0.0, 0.0], 2: [1.0, 0.0]}
    value, grads = robustness_and_gradients(body, xs, [1, 2])
    assert_allclose(value, 3.0)
    assert_allclose(grads[2], [-2.0, 0.0])

    with pytest.raises(ValueError):
        robustness_and_gradients(body, {1: [0.0, 0.0]}, [1])

    with pytest.raises(ValueError):
        robustness_and_gradients(body, xs, [1, 3])

    with pytest.raises(ValueError):
        robustness_and_gradients(body, {1: [0.0, 0.0], 2: [nan, 0.0]}, [1])
