import pytest
from numpy import array, inf, nan
from numpy.testing import assert_allclose, assert_equal

from stlppc._util import (
    AssumptionError,
    FormulaError,
    ScenarioError,
    TraceFormatError,
    check_agent_ids,
    check_interval,
    check_nonnegative,
    check_positive,
    check_vector,
    clamp_open,
)
from stlppc._util._numbers import clamp_eps


def test_util_check_vector():
    assert_allclose(check_vector([1, 2]), [1.0, 2.0])
    assert_allclose(check_vector([1, 2], dim=2), [1.0, 2.0])

    with pytest.raises(ValueError):
        check_vector([[1, 2]])

    with pytest.raises(ValueError):
        check_vector([1, 2], dim=3)

    with pytest.raises(ValueError):
        check_vector([1, nan])

    with pytest.raises(ValueError):
        check_vector([inf])


def test_util_check_numbers():
    assert check_positive(2) == 2.0
    assert check_nonnegative(0) == 0.0

    with pytest.raises(ValueError):
        check_positive(0.0)

    with pytest.raises(ValueError):
        check_positive(nan)

    with pytest.raises(ValueError):
        check_nonnegative(-1e-12)

    assert check_interval(1, 2) == (1.0, 2.0)
    assert check_interval(0, 0) == (0.0, 0.0)

    with pytest.raises(ValueError) as e:
        check_interval(2, 1)
    assert "Malformed" in str(e.value)

    with pytest.raises(ValueError):
        check_interval(-1, 1)


def test_util_check_agent_ids():
    assert check_agent_ids([3, 1, 2]) == [1, 2, 3]

    with pytest.raises(ValueError):
        check_agent_ids([1, 1])

    with pytest.raises(ValueError):
        check_agent_ids([0, 1])


def test_util_clamp_open():
    assert clamp_open(0.0, -1.0, 1.0) == (0.0, False)

    v, clamped = clamp_open(-1.0, -1.0, 0.0)
    assert clamped
    assert -1.0 < v < 0.0

    v, clamped = clamp_open(array([-2.0, -0.5, 0.5]), -1.0, 0.0, eps=0.1)
    assert clamped
    assert_allclose(v, [-0.9, -0.5, -0.1])

    v, clamped = clamp_open(-1e-12, -1.0, 0.0)
    assert clamped
    assert_equal(v, -clamp_eps)


def test_util_errors():
    e = FormulaError("Unexpected character", position=4)
    assert e.position == 4
    assert "column 4" in str(e)
    assert isinstance(e, ValueError)

    e = AssumptionError("acyclicity", "cycle found")
    assert e.assumption == "acyclicity"
    assert str(e).startswith("[acyclicity]")

    e = ScenarioError(["$.agents[0].dim: must be positive", "$.tasks: missing"])
    assert len(e.errors) == 2
    assert "$.tasks" in str(e)

    e = TraceFormatError("bad value", line=3)
    assert e.line == 3
    assert str(e).startswith("line 3")
