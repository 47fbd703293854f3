from numpy import sqrt

from .._util import ObserverError, check_positive
from ..funnel import PPF


class ObserverFunnels:
    """
    Error funnels of the k-hop state observer.

    Every observer pair (i, r) carries two prescribed performance functions:
    δᵣⁱ bounds the estimation error |x̂ᵣⁱ − xᵣ| and ρᵣⁱ bounds the consensus
    residual |ξᵣⁱ|. For each target r the stacked residual bound must satisfy

        ‖ρᵣ(t)‖ ≤ α minᵢ δᵣⁱ(t),

    where the norm runs over the observers of r. The constraint is checked at
    t = 0 and t → ∞, which covers every t when all funnels decay at the same
    rate.

    Parameters
    ----------
    delta : dict
        Pair (i, r) to δᵣⁱ.
    rho : dict
        Pair (i, r) to ρᵣⁱ.
    alpha : float
        Topology-dependent gain α > 0.
    """

    def __init__(self, delta, rho, alpha=1.0):
        if set(delta) != set(rho):
            raise ObserverError("delta and rho funnels must cover the same pairs.")
        self._delta = dict(sorted(delta.items()))
        self._rho = dict(sorted(rho.items()))
        self._alpha = check_positive(alpha, "alpha")

    @classmethod
    def uniform(cls, pairs, delta, rho, alpha=1.0):
        """
        Same δ and ρ for every pair.

        Example
        -------

        .. doctest::

            >>> from stlppc.funnel import PPF
            >>> from stlppc.observer import ObserverFunnels
            >>>
            >>> f = ObserverFunnels.uniform([(1, 3), (2, 3)], PPF(1.8, 1.0, 2.0),
            ...                             PPF(0.5, 0.25, 2.0), alpha=0.5)
            >>> f.check()
            >>> f.pairs
            [(1, 3), (2, 3)]
        """
        pairs = [tuple(p) for p in pairs]
        return cls({p: delta for p in pairs}, {p: rho for p in pairs}, alpha)

    @property
    def pairs(self):
        return list(self._delta)

    @property
    def alpha(self):
        return self._alpha

    def delta(self, pair):
        return self._delta[pair]

    def rho(self, pair):
        return self._rho[pair]

    def targets(self):
        return sorted({r for _, r in self._delta})

    def observers(self, r):
        return [i for i, t in self._delta if t == r]

    def check(self):
        """
        Raise :class:`.ObserverError` unless all funnels share one decay rate
        and the residual bounds fit under α min δ at t = 0 and t → ∞.
        """
        funnels = list(self._delta.values()) + list(self._rho.values())
        decays = {f.decay for f in funnels if f.v0 != f.v_inf}
        if len(decays) > 1:
            msg = "Observer funnels must share one decay rate, got"
            raise ObserverError(f"{msg} {sorted(decays)}.")

        for r in self.targets():
            obs = self.observers(r)
            for label, pick in (("t = 0", _initial), ("t -> inf", _final)):
                lhs = float(sqrt(sum(pick(self._rho[(i, r)]) ** 2 for i in obs)))
                rhs = self._alpha * min(pick(self._delta[(i, r)]) for i in obs)
                if lhs > rhs:
                    msg = f"Residual bounds of target {r} at {label}: "
                    msg += f"|rho| = {lhs:.6g} exceeds alpha * min delta = {rhs:.6g}."
                    raise ObserverError(msg)

    def as_dict(self):
        return {
            "alpha": self._alpha,
            "pairs": [
                {
                    "observer": i,
                    "target": r,
                    "delta": self._delta[(i, r)].as_dict(),
                    "rho": self._rho[(i, r)].as_dict(),
                }
                for i, r in self._delta
            ],
        }

    def __repr__(self):
        return f"ObserverFunnels(pairs={len(self._delta)}, alpha={self._alpha})"


def _initial(f: PPF):
    return f.v0


def _final(f: PPF):
    return f.v_inf
