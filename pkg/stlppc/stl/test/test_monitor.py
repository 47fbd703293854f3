import pytest
from numpy import arange, linspace, ones, sin, zeros
from numpy.testing import assert_allclose

from stlppc.stl import Predicate, body_signal, monitor_signal, monitor_temporal, parse_formula


def _table():
    return {"p": Predicate("linear", {1: [1.0]}, bias=0.0)}


def test_monitor_constant_trace():
    times = linspace(0, 2, 2001)
    phi = parse_formula("G[1,2](p)", _table())
    assert_allclose(monitor_temporal(phi, times, {1: 5 * ones((2001, 1))}), 5)


def test_monitor_dip_inside_window():
    times = linspace(0, 2, 2001)
    x = 5 * ones((2001, 1))
    x[1500, 0] = -1
    phi = parse_formula("G[1,2](p)", _table())
    assert monitor_temporal(phi, times, {1: x}) < 0

    x[1500, 0] = 5
    x[500, 0] = -1
    assert_allclose(monitor_temporal(phi, times, {1: x}), 5)


def test_monitor_always_below_eventually():
    times = linspace(0, 3, 301)
    x = sin(3 * times)[:, None]
    table = _table()
    for a, b in [(0, 1), (1, 2), (0.5, 3)]:
        g = monitor_temporal(parse_formula(f"G[{a},{b}](p)", table), times, {1: x})
        f = monitor_temporal(parse_formula(f"F[{a},{b}](p)", table), times, {1: x})
        assert g <= f


def test_monitor_eventually_always():
    times = arange(0, 301) * 0.01
    v = zeros(301)
    v[150:200] = 1.0
    phi = parse_formula("F[1,2]G[0,0.3](p)", _table())
    assert_allclose(monitor_signal(phi, times, v), 1.0)

    phi = parse_formula("F[1,2]G[0,0.6](p)", _table())
    assert_allclose(monitor_signal(phi, times, v), 0.0)


def test_monitor_brute_force():
    times = arange(0, 201) * 0.01
    x = (times - 1.3) ** 2
    phi = parse_formula("G[0.5,1.5](p)", _table())
    values = body_signal(phi.body, {1: x[:, None]})
    expected = min(v for t, v in zip(times, values) if 0.5 - 1e-9 <= t <= 1.5 + 1e-9)
    assert_allclose(monitor_signal(phi, times, values), expected)


def test_monitor_window_exceeds_horizon():
    times = linspace(0, 1.5, 151)
    phi = parse_formula("G[1,2](p)", _table())
    with pytest.raises(ValueError):
        monitor_temporal(phi, times, {1: ones((151, 1))})

    phi = parse_formula("F[0,1]G[0,1](p)", _table())
    with pytest.raises(ValueError):
        monitor_temporal(phi, times, {1: ones((151, 1))})
