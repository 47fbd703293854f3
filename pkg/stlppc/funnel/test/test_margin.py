import pytest
from numpy import linspace
from numpy.random import RandomState
from numpy.testing import assert_allclose

from stlppc._util import FunnelError
from stlppc.funnel import PPF, Margin, MarginTerm, margin_eval
from stlppc.stl import Atom, Conj, Predicate


def _pair(r2=25.0):
    return Predicate("norm2_le", {1: 1.0, 3: -1.0}, offset=[0, 0], radius_sq=r2)


def test_margin_zero_without_estimates():
    m = Margin.for_body(Atom("p", _pair()), {})
    assert m.is_zero
    assert margin_eval(m, 0.0) == 0
    assert_allclose(m.value(linspace(0, 5, 11)), 0)
    assert m.limit() == 0


def test_margin_closed_form():
    m = Margin.for_body(Atom("p", _pair()), {3: PPF(1.0, 1.0)})
    assert_allclose(margin_eval(m, 0.0), 9.0)

    m = Margin.for_body(Atom("p", _pair()), {3: PPF(2.0, 0.5, 1.0)})
    assert_allclose(m.limit(), 2 * 0.5 * 5 - 0.25)
    assert_allclose(m.value(50.0), m.limit())


def test_margin_soundness_grid():
    random = RandomState(5)
    for _ in range(50):
        r = random.uniform(0.5, 10)
        delta = random.uniform(0, 0.99) * r
        margin = 2 * delta * r - delta ** 2
        y = linspace(0, r - delta, 200)
        e = linspace(0, delta, 200)
        Y, E = y[:, None], e[None, :]
        assert ((r ** 2 - (Y + E) ** 2) >= (r ** 2 - Y ** 2) - margin - 1e-12 * r ** 2).all()


def test_margin_scales_with_coefficients():
    p = Predicate("norm2_le", {1: 1.0, 3: -2.0}, offset=[0, 0], radius_sq=100.0)
    m = Margin.for_body(Atom("p", p), {3: PPF(1.0, 1.0)})
    assert_allclose(m.value(0.0), 2 * 2 * 10 - 4)

    q = Predicate("linear", {1: [1.0, 0.0], 3: [1.0, -2.0]}, bias=0.0)
    m = Margin.for_body(Atom("q", q), {3: PPF(0.5, 0.5)})
    assert_allclose(m.value(0.0), 1.5)


def test_margin_negated():
    term = MarginTerm(_pair(), {3: PPF(6.0, 6.0)}, negated=True)
    assert_allclose(term.value(0.0), 2 * 6 * 5 + 36)


def test_margin_max_over_conjuncts():
    p = _pair()
    q = Predicate("norm2_le", {1: 1.0, 4: -1.0}, offset=[0, 0], radius_sq=100.0)
    body = Conj((Atom("p", p), Atom("q", q)))
    m = Margin.for_body(body, {3: PPF(1.0, 1.0), 4: PPF(1.0, 1.0)})
    assert_allclose(m.value(0.0), 19.0)


def test_margin_derivative():
    m = Margin.for_body(Atom("p", _pair()), {3: PPF(2.0, 0.5, 1.0)})
    h = 1e-6
    fd = (m.value(1.0 + h) - m.value(1.0 - h)) / (2 * h)
    assert_allclose(m.derivative(1.0), fd, rtol=1e-6)


def test_margin_infeasible():
    m = Margin.for_body(Atom("p", _pair()), {3: PPF(6.0, 1.0, 1.0)})
    with pytest.raises(FunnelError):
        m.value(0.0)
    assert_allclose(m.limit(), 9.0)
