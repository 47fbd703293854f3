import warnings

import pandas as pd
import pytest
from numpy import inf, linspace
from numpy.testing import assert_allclose, assert_equal

from stlppc._util import TraceFormatError
from stlppc.sim import FaultLog, FunnelFault, ObserverFault, Trace


def _trace():
    t = linspace(0, 1, 11)
    data = pd.DataFrame(
        {
            "t": t,
            "x_1_1": t ** 2,
            "x_1_2": -t,
            "u_1_1": 1 / (1 + t),
            "u_1_2": 0 * t,
            "xhat_2_1_1": t ** 2 + 0.01,
            "xhat_2_1_2": -t,
            "err_2_1": 0.01 + 0 * t,
            "delta_2_1": 1 + t,
            "rhohat_task1": 1 / 3 + t,
            "rho_task1": 0.3 + t,
            "e_task1": -0.5 + 0 * t,
            "Gamma_task1": 2 - t,
            "gamma_task1": 2 - t,
            "rho_task1_1": 0.3 + t,
            "rho_task1_2": inf + 0 * t,
        }
    )
    return Trace(data)


def test_trace_accessors():
    trace = _trace()
    assert_equal(trace.agents(), [1])
    assert_equal(trace.pairs(), [(2, 1)])
    assert_equal(trace.tasks(), ["task1"])
    assert_allclose(trace.dt, 0.1)
    assert trace.is_uniform()
    assert_equal(trace.state(1).shape, (11, 2))
    assert_equal(trace.estimate(2, 1).shape, (11, 2))
    assert_equal(len(trace.conjunct_robustness("task1")), 2)
    assert_equal(len(trace.head(4)), 4)
    assert trace.status == "pass"

    with pytest.raises(TraceFormatError):
        trace.column("rho_task9")

    with pytest.raises(TraceFormatError):
        trace.state(5)


def test_trace_csv_round_trip(tmp_path):
    (tmp_path / "again").mkdir()
    trace = _trace()
    trace.write(tmp_path)
    again = Trace.read(tmp_path)
    assert_equal(list(again.data.columns), list(trace.data.columns))
    assert_allclose(again.data.to_numpy(), trace.data.to_numpy(), rtol=1e-8)
    assert again.status == "pass"

    text = (tmp_path / "trace.csv").read_text().splitlines()
    assert text[0].startswith("t,x_1_1,x_1_2,u_1_1")
    assert "0.333333333" in text[1]

    again = Trace.read(tmp_path / "trace.csv")
    assert_equal(len(again), 11)

    assert text[1].split(",")[2] == "0"
    again.write(tmp_path / "again")
    first = (tmp_path / "trace.csv").read_bytes()
    assert (tmp_path / "again" / "trace.csv").read_bytes() == first


def test_trace_corrupt_csv(tmp_path):
    lines = _csv_lines(tmp_path)

    bad = list(lines)
    bad[4] = bad[4].replace(bad[4].split(",")[2], "abc", 1)
    path = tmp_path / "bad.csv"
    path.write_text("\n".join(bad) + "\n")
    with pytest.raises(TraceFormatError) as e:
        Trace.read_csv(path)
    assert e.value.line == 5

    bad = list(lines)
    bad[7] = bad[7] + ",1.0"
    path.write_text("\n".join(bad) + "\n")
    with pytest.raises(TraceFormatError) as e:
        Trace.read_csv(path)
    assert e.value.line == 8

    path.write_text("x_1_1,x_1_2\n1,2\n")
    with pytest.raises(TraceFormatError) as e:
        Trace.read_csv(path)
    assert e.value.line == 1

    path.write_text("")
    with pytest.raises(TraceFormatError):
        Trace.read_csv(path)


def _csv_lines(tmp_path):
    path = tmp_path / "good.csv"
    _trace().to_csv(path)
    return path.read_text().splitlines()


def test_fault_log(tmp_path):
    log = FaultLog()
    with pytest.warns(FunnelFault):
        log.record("funnel", 2, 0.002, "task1", "e clamped")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        log.record("funnel", 3, 0.003, "task1", "e clamped")
    with pytest.warns(ObserverFault):
        log.record("observer", 3, 0.003, "2->1", "residual clamped")

    assert_equal(len(log), 3)
    assert_equal(log.summary()["by_kind"], {"funnel": 2, "observer": 1})
    assert log.first().step == 2

    with pytest.raises(ValueError):
        log.record("other", 0, 0.0, "x", "y")

    log.write_json(tmp_path / "faults.json")
    again = FaultLog.read_json(tmp_path / "faults.json")
    assert_equal(again.as_list(), log.as_list())
