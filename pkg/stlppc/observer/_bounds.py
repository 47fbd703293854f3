from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from numpy import abs as npabs, asarray
from numpy.linalg import norm


@dataclass
class PairBound:
    """
    Estimation error of one observer pair against its δ funnel.
    """

    pair: Tuple[int, int]
    error_norm: float
    delta: float
    componentwise: bool
    in_norm: bool
    first_violation: Optional[float] = None

    @property
    def passed(self):
        return self.componentwise and self.in_norm

    def as_dict(self):
        return {
            "observer": self.pair[0],
            "target": self.pair[1],
            "error_norm": self.error_norm,
            "delta": self.delta,
            "passed": self.passed,
            "first_violation": self.first_violation,
        }


@dataclass
class ObserverBoundsReport:
    pairs: List[PairBound] = field(default_factory=list)

    @property
    def passed(self):
        return all(p.passed for p in self.pairs)

    def failures(self):
        return [p for p in self.pairs if not p.passed]

    def as_dict(self):
        return {"passed": self.passed, "pairs": [p.as_dict() for p in self.pairs]}


def check_observer_bounds(state, true_states, funnels, t):
    """
    Check |x̂ᵣⁱ − xᵣ| < δᵣⁱ(t) componentwise and in norm for every pair.

    Returns
    -------
    :class:`.ObserverBoundsReport`
        One verdict per pair.
    """
    report = ObserverBoundsReport()
    for pair in state.pairs:
        err = asarray(state[pair], float) - asarray(true_states[pair[1]], float)
        d = funnels.delta(pair).value(t)
        report.pairs.append(
            PairBound(
                pair=pair,
                error_norm=float(norm(err)),
                delta=d,
                componentwise=bool((npabs(err) < d).all()),
                in_norm=bool(norm(err) < d),
                first_violation=None if norm(err) < d else float(t),
            )
        )
    return report


def scan_observer_bounds(times, errors, funnels):
    """
    Check a whole run of estimation errors.

    Parameters
    ----------
    times : array_like
        Sample instants.
    errors : dict
        Pair to an array of shape (len(times), dim) of x̂ᵣⁱ − xᵣ.
    funnels : ObserverFunnels
        Observer funnels.

    Returns
    -------
    :class:`.ObserverBoundsReport`
        Worst error per pair and the first instant it left its funnel.
    """
    times = asarray(times, float)
    report = ObserverBoundsReport()
    for pair, err in sorted(errors.items()):
        err = asarray(err, float)
        d = funnels.delta(pair).value(times)
        n = norm(err, axis=1)
        comp_ok = (npabs(err) < d[:, None]).all(axis=1)
        norm_ok = n < d
        ok = comp_ok & norm_ok
        first = None if ok.all() else float(times[(~ok).argmax()])
        k = int((n / d).argmax())
        report.pairs.append(
            PairBound(
                pair=pair,
                error_norm=float(n[k]),
                delta=float(d[k]),
                componentwise=bool(comp_ok.all()),
                in_norm=bool(norm_ok.all()),
                first_violation=first,
            )
        )
    return report
