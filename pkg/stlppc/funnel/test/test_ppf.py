import pytest
from numpy import linspace, log
from numpy.testing import assert_allclose

from stlppc.funnel import PPF, ppf_deriv, ppf_eval


def test_ppf_values():
    f = PPF(2.0, 0.5, 1.0)
    assert ppf_eval(f, 0.0) == 2.0
    assert_allclose(ppf_eval(f, log(2)), 1.25)
    assert_allclose(ppf_deriv(f, 0.0), -1.5)

    flat = PPF(3.0, 1.0, 0.0)
    assert_allclose(flat.value(linspace(0, 10, 11)), 3.0)
    assert_allclose(flat.derivative(5.0), 0.0)


def test_ppf_definition_clauses():
    for v0, v_inf, decay in [(2.0, 0.5, 1.0), (10.0, 10.0, 3.0), (5.0, 0.1, 20.0)]:
        f = PPF(v0, v_inf, decay)
        t = linspace(0, 10, 10001)
        v = f.value(t)
        d = f.derivative(t)
        assert (v > 0).all()
        assert (v <= v0).all()
        assert (v >= v_inf).all()
        assert (abs(d) <= decay * (v0 - v_inf) + 1e-12).all()
        assert (d <= 0).all()


def test_ppf_errors():
    with pytest.raises(ValueError):
        PPF(1.0, 2.0, 1.0)

    with pytest.raises(ValueError):
        PPF(1.0, 0.0, 1.0)

    with pytest.raises(ValueError):
        PPF(2.0, 1.0, -1.0)

    with pytest.raises(ValueError):
        PPF(2.0, 1.0, 1.0).value(-0.1)
