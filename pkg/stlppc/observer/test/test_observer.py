import pytest
from numpy import array, linspace, log, zeros
from numpy.random import RandomState
from numpy.testing import assert_allclose, assert_equal

from stlppc._util import AssumptionError, ObserverError
from stlppc.example import five_agent_graphs, path_graphs
from stlppc.funnel import PPF
from stlppc.observer import (
    ObserverFunnels,
    ObserverState,
    check_observer_bounds,
    init_observer,
    observer_links,
    observer_residuals,
    observer_rhs,
    observer_xi,
    scan_observer_bounds,
)
from stlppc.topology import analyze_topology


def _five_agents():
    a = analyze_topology(*five_agent_graphs())
    links = observer_links(a.gc, a.observer_pairs)
    funnels = ObserverFunnels.uniform(
        a.observer_pairs, PPF(1.8, 1.0, 2.0), PPF(0.5, 0.25, 2.0), alpha=0.5
    )
    states = {
        1: array([0.0, 0.5]),
        2: array([0.025, 0.812]),
        3: array([0.325, -1.618]),
        4: array([-0.1, 0.532]),
        5: array([1.9, -0.882]),
    }
    return a, links, funnels, states


def test_observer_links_five_agents():
    a, links, _, _ = _five_agents()
    assert_equal(len(links.pairs), 10)
    assert links.consensus[(1, 5)] == (2, 3)
    assert links.anchors[(1, 5)] == 0
    assert links.consensus[(1, 4)] == (2,)
    assert links.anchors[(1, 4)] == 1
    assert links.consensus[(5, 1)] == (4,)
    assert links.anchors[(5, 1)] == 0


def test_observer_xi_examples():
    x = array([1.0, -2.0])
    assert_allclose(observer_xi(1, 5, x, {2: x, 3: x}), zeros(2))
    assert_allclose(observer_xi(1, 3, x, {}, x, anchors=1), zeros(2))

    # path 1-2-3-4, agent 1 observing agent 3: agent 2 is a neighbour of 3
    gc, _ = path_graphs()
    links = observer_links(gc, [(1, 3), (2, 4), (3, 1), (4, 2)])
    est = {(1, 3): [0.3, 0.1], (2, 4): [0, 0], (3, 1): [0, 0], (4, 2): [0, 0]}
    state = ObserverState(est)
    truth = {1: [0, 0], 2: [0, 0], 3: [0.1, 0.4], 4: [0, 0]}
    xi = observer_residuals(state, links, truth)
    assert_allclose(xi[(1, 3)], [0.3 - 0.1, 0.1 - 0.4])

    xi = observer_xi(1, 5, x, {2: x + 1, 3: x - 3}, [0.0, 0.0], anchors=2)
    assert_allclose(xi, (x - (x + 1)) + (x - (x - 3)) + 2 * x)


def test_observer_xi_errors():
    x = array([1.0, 2.0])
    with pytest.raises(ObserverError):
        observer_xi(1, 5, x, {2: x}, consensus=(2, 3))

    with pytest.raises(ObserverError):
        observer_xi(1, 3, x, {}, anchors=1)

    with pytest.raises(ObserverError):
        observer_xi(1, 3, x, {}, relayed_true=x)


def test_observer_rhs():
    assert_allclose(observer_rhs(zeros(3), 1.0), zeros(3))
    assert_allclose(observer_rhs([0.5], 1.0), [-log(8 / 3) * log(3)])
    assert_allclose(observer_rhs([1.0], 2.0), [-0.5 * log(8 / 3) * log(3)])

    random = RandomState(0)
    e = random.uniform(-0.999, 0.999, 100)
    assert_allclose(observer_rhs(-e, 1.0), -observer_rhs(e, 1.0))
    assert ((observer_rhs(e, 1.0) * e) <= 0).all()

    rhs, clamped = observer_rhs([0.1, -0.2], 1.0, return_clamped=True)
    assert not clamped
    rhs, clamped = observer_rhs([1.5, -0.2], 1.0, return_clamped=True)
    assert clamped
    assert rhs[0] < 0

    with pytest.raises(ObserverError):
        observer_rhs([0.1], 0.0)


def test_observer_funnels_check():
    a, _, funnels, _ = _five_agents()
    funnels.check()
    assert_equal(funnels.observers(5), [1, 2, 3])

    loose = ObserverFunnels.uniform(
        a.observer_pairs, PPF(1.8, 1.0, 2.0), PPF(0.5, 0.25, 2.0), alpha=0.2
    )
    with pytest.raises(ObserverError):
        loose.check()

    mixed = ObserverFunnels.uniform(
        a.observer_pairs, PPF(1.8, 1.0, 2.0), PPF(0.5, 0.25, 3.0), alpha=0.5
    )
    with pytest.raises(ObserverError):
        mixed.check()


def test_init_observer():
    _, links, funnels, states = _five_agents()
    state = init_observer(links, funnels, states)
    assert_equal(len(state), 10)
    xi = observer_residuals(state, links, states)
    for v in xi.values():
        assert_allclose(v, zeros(2))

    state = init_observer(links, funnels, states, perturbation=0.01, seed=1)
    again = init_observer(links, funnels, states, perturbation=0.01, seed=1)
    assert_allclose(state.as_vector(), again.as_vector())
    assert check_observer_bounds(state, states, funnels, 0.0).passed

    with pytest.raises(AssumptionError) as e:
        init_observer(links, funnels, states, perturbation=2.0, seed=1)
    assert e.value.assumption == "initialization"

    est = {p: states[p[1]].copy() for p in links.pairs}
    est[(2, 4)] = est[(2, 4)] + 0.3
    with pytest.raises(AssumptionError) as e:
        init_observer(links, funnels, states, estimates=est)
    assert "(2, 4)" in str(e.value)


def test_observer_state_vector():
    _, links, funnels, states = _five_agents()
    state = init_observer(links, funnels, states)
    v = state.as_vector()
    assert_equal(v.shape, (20,))
    other = state.with_vector(v + 1)
    assert_allclose(other[(1, 4)], states[4] + 1)
    assert_equal(sorted(state.estimates_of(5)), [1, 2, 3])

    with pytest.raises(ObserverError):
        state.with_vector(v[:3])

    with pytest.raises(ObserverError):
        state[(9, 9)]


def test_check_observer_bounds_fail():
    _, links, funnels, states = _five_agents()
    state = init_observer(links, funnels, states)
    moved = dict(states)
    moved[5] = states[5] + array([1.9, 0.0])
    report = check_observer_bounds(state, moved, funnels, 0.0)
    assert not report.passed
    assert {p.pair[1] for p in report.failures()} == {5}


def test_scan_observer_bounds_frozen_estimate():
    funnels = ObserverFunnels.uniform([(1, 3)], PPF(1.8, 1.0, 2.0), PPF(0.5, 0.25, 2.0))
    t = linspace(0, 2, 201)
    err = zeros((201, 2))
    err[:, 0] = 0.8 * t
    report = scan_observer_bounds(t, {(1, 3): err}, funnels)
    assert not report.passed
    first = report.pairs[0].first_violation
    d = funnels.delta((1, 3))
    assert 0.8 * first >= d.value(first)
    assert 0.8 * (first - 0.01) < d.value(first - 0.01)


def test_anchored_observer_converges():
    # single observer of a frozen target, anchored to the truth
    funnels = ObserverFunnels.uniform([(1, 3)], PPF(1.8, 1.0, 2.0), PPF(0.5, 0.25, 2.0))
    x3 = array([1.0, -1.0])
    xhat = x3 + array([0.3, -0.2])
    dt = 1e-3
    t = 0.0
    rho = funnels.rho((1, 3))
    while t < 3.0:
        xi = observer_xi(1, 3, xhat, {}, x3, anchors=1)
        xhat = xhat + dt * observer_rhs(xi, rho.value(t))
        t += dt
    assert (abs(xhat - x3) < 1.0 + 1e-3).all()
    assert (abs(xhat - x3) < 0.25).all()
