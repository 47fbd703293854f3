import json
import warnings
from dataclasses import asdict, dataclass
from typing import Optional


class FunnelFault(RuntimeWarning):
    """A normalised task error left (−1, 0) and was clamped."""


class ObserverFault(RuntimeWarning):
    """An observer residual left its funnel or an estimate left its δ bound."""


class IntegrationFault(RuntimeWarning):
    """The joint state stopped being finite."""


_CATEGORIES = {
    "funnel": FunnelFault,
    "observer": ObserverFault,
    "integration": IntegrationFault,
}


@dataclass(frozen=True)
class Fault:
    kind: str
    step: int
    time: float
    subject: str
    message: str

    def __str__(self):
        return f"[{self.kind}] t={self.time:.6g} (step {self.step}) {self.subject}: {self.message}"


class FaultLog:
    """
    Runtime faults of a run.

    Every fault is kept; a warning is emitted for the first fault of each
    kind and subject.

    Example
    -------

    .. doctest::

        >>> import warnings
        >>> from stlppc.sim import FaultLog
        >>>
        >>> log = FaultLog()
        >>> with warnings.catch_warnings():
        ...     warnings.simplefilter("ignore")
        ...     log.record("funnel", 3, 0.003, "phi1", "e clamped")
        >>> len(log), log.first().subject
        (1, 'phi1')
    """

    def __init__(self, faults=()):
        self._faults = list(faults)
        self._seen = {(f.kind, f.subject) for f in self._faults}

    def record(self, kind, step, time, subject, message):
        if kind not in _CATEGORIES:
            raise ValueError(f"Unknown fault kind: {kind}.")
        fault = Fault(kind, int(step), float(time), str(subject), message)
        self._faults.append(fault)
        if (kind, fault.subject) not in self._seen:
            self._seen.add((kind, fault.subject))
            warnings.warn(str(fault), _CATEGORIES[kind])
        return fault

    def first(self) -> Optional[Fault]:
        return self._faults[0] if self._faults else None

    def of_kind(self, kind):
        return [f for f in self._faults if f.kind == kind]

    def __len__(self):
        return len(self._faults)

    def __iter__(self):
        return iter(self._faults)

    def __bool__(self):
        return bool(self._faults)

    def summary(self):
        counts = {}
        for f in self._faults:
            counts[f.kind] = counts.get(f.kind, 0) + 1
        first = self.first()
        return {"count": len(self), "by_kind": counts, "first": None if first is None else asdict(first)}

    def as_list(self):
        return [asdict(f) for f in self._faults]

    def write_json(self, path):
        with open(path, "w") as fp:
            json.dump({"summary": self.summary(), "faults": self.as_list()}, fp, indent=2)

    @classmethod
    def read_json(cls, path):
        with open(path, "r") as fp:
            doc = json.load(fp)
        return cls(Fault(**f) for f in doc.get("faults", []))
