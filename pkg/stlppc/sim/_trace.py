import re
from os.path import exists, isdir, join

import pandas as pd
from numpy import asarray, diff, stack

from .._util import TraceFormatError
from ._faults import FaultLog

TRACE_FILE = "trace.csv"
FAULTS_FILE = "faults.json"
FLOAT_FORMAT = "%.9g"

_STATE = re.compile(r"^x_(\d+)_(\d+)$")
_INPUT = re.compile(r"^u_(\d+)_(\d+)$")
_ESTIMATE = re.compile(r"^xhat_(\d+)_(\d+)_(\d+)$")
_RHOHAT = re.compile(r"^rhohat_([A-Za-z0-9]+)$")
_CONJUNCT = re.compile(r"^rho_([A-Za-z0-9]+)_(\d+)$")


class Trace:
    """
    Sampled closed-loop run.

    One row per sample on a uniform grid. The columns are

    - ``t``;
    - ``x_<i>_<c>`` and ``u_<i>_<c>``: state and input components of agent i;
    - ``xhat_<i>_<r>_<c>``, ``err_<i>_<r>`` and ``delta_<i>_<r>``: estimate of
      agent r held by agent i, its error norm and its δ bound;
    - ``rhohat_<task>``, ``rho_<task>``, ``e_<task>``, ``Gamma_<task>`` and
      ``gamma_<task>``: estimated and true robustness of a task body, the
      normalised error and the funnel;
    - ``rho_<task>_<j>``: true robustness of the j-th conjunct.

    Components and conjuncts are numbered from 1.

    Parameters
    ----------
    data : pandas.DataFrame
        Samples.
    faults : FaultLog, optional
        Runtime faults.
    """

    def __init__(self, data, faults=None):
        self._data = data
        self._faults = FaultLog() if faults is None else faults

    @property
    def data(self):
        return self._data

    @property
    def faults(self):
        return self._faults

    @property
    def status(self):
        return "fail" if self._faults else "pass"

    @property
    def times(self):
        return self._data["t"].to_numpy(float)

    @property
    def dt(self):
        t = self.times
        return float(t[1] - t[0]) if t.shape[0] > 1 else 0.0

    def is_uniform(self, rtol=1e-6):
        t = self.times
        if t.shape[0] < 3:
            return True
        d = diff(t)
        return bool(abs(d - d[0]).max() <= rtol * abs(d[0]))

    def agents(self):
        return sorted({int(m.group(1)) for m in _matches(_STATE, self._data.columns)})

    def pairs(self):
        return sorted(
            {(int(m.group(1)), int(m.group(2))) for m in _matches(_ESTIMATE, self._data.columns)}
        )

    def tasks(self):
        return sorted({m.group(1) for m in _matches(_RHOHAT, self._data.columns)})

    def column(self, name):
        try:
            return self._data[name].to_numpy(float)
        except KeyError:
            raise TraceFormatError(f"Missing column {name}.")

    def state(self, i):
        """
        (T, n) array of the states of agent ``i``.
        """
        return self._stack(f"x_{i}_")

    def inputs(self, i):
        return self._stack(f"u_{i}_")

    def estimate(self, i, r):
        return self._stack(f"xhat_{i}_{r}_")

    def states(self):
        return {i: self.state(i) for i in self.agents()}

    def conjunct_robustness(self, task):
        cols = sorted(
            (int(m.group(2)), m.group(0))
            for m in _matches(_CONJUNCT, self._data.columns)
            if m.group(1) == task
        )
        return [self.column(c) for _, c in cols]

    def head(self, n):
        """
        First ``n`` samples.
        """
        return Trace(self._data.iloc[:n].reset_index(drop=True), self._faults)

    def _stack(self, prefix):
        cols = [c for c in self._data.columns if c.startswith(prefix)]
        cols = [c for c in cols if c[len(prefix) :].isdigit()]
        if not cols:
            raise TraceFormatError(f"Missing columns {prefix}*.")
        cols.sort(key=lambda c: int(c[len(prefix) :]))
        return stack([self.column(c) for c in cols], axis=1)

    def to_csv(self, path):
        # Adding 0.0 turns -0.0 into 0.0.
        (self._data + 0.0).to_csv(path, index=False, float_format=FLOAT_FORMAT)

    @classmethod
    def read_csv(cls, path, faults=None):
        """
        Parse a trace CSV.

        Raises
        ------
        TraceFormatError
            With the line number of the first malformed row.
        """
        try:
            raw = pd.read_csv(path, dtype=str, keep_default_na=False)
        except pd.errors.EmptyDataError:
            raise TraceFormatError("Empty trace file.", line=1)
        except pd.errors.ParserError as e:
            m = re.search(r"line (\d+)", str(e))
            raise TraceFormatError(str(e).strip(), line=int(m.group(1)) if m else None)

        if "t" not in raw.columns:
            raise TraceFormatError("Missing column t.", line=1)

        data = pd.DataFrame(index=raw.index)
        first_bad = None
        for col in raw.columns:
            values = pd.to_numeric(raw[col], errors="coerce")
            bad = asarray(values.isna())
            if bad.any():
                k = int(bad.argmax())
                first_bad = k if first_bad is None else min(first_bad, k)
            data[col] = values.astype(float)
        if first_bad is not None:
            raise TraceFormatError("Non-numeric or missing value.", line=first_bad + 2)
        return cls(data, faults)

    def write(self, out_dir):
        """
        Write ``trace.csv`` and the ``faults.json`` sidecar into ``out_dir``.
        """
        self.to_csv(join(out_dir, TRACE_FILE))
        self._faults.write_json(join(out_dir, FAULTS_FILE))

    @classmethod
    def read(cls, path):
        """
        Read a trace from its CSV file or from the directory holding it.
        """
        if isdir(path):
            csv = join(path, TRACE_FILE)
            sidecar = join(path, FAULTS_FILE)
        else:
            csv = path
            sidecar = join(_dirname(path), FAULTS_FILE)
        faults = FaultLog.read_json(sidecar) if exists(sidecar) else None
        return cls.read_csv(csv, faults)

    def __len__(self):
        return len(self._data)

    def __repr__(self):
        return f"Trace(samples={len(self)}, columns={len(self._data.columns)}, status={self.status})"


def _matches(pattern, columns):
    for c in columns:
        m = pattern.match(c)
        if m is not None:
            yield m


def _dirname(path):
    from os.path import dirname

    return dirname(path) or "."
