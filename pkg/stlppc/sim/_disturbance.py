from numpy import zeros

from .._util import check_nonnegative


class DisturbanceSpec:
    """
    Piecewise-constant uniform disturbance.

    Each component is drawn from [−bound, bound] and held for ``hold``
    integration steps.

    Parameters
    ----------
    bound : float, optional
        Componentwise amplitude. Defaults to ``0``.
    hold : int, optional
        Steps per sample. Defaults to ``1``.
    """

    def __init__(self, bound=0.0, hold=1):
        self._bound = check_nonnegative(bound, "disturbance bound")
        self._hold = int(hold)
        if self._hold < 1:
            raise ValueError(f"Disturbance hold must be at least one step, got {hold}.")

    @property
    def bound(self):
        return self._bound

    @property
    def hold(self):
        return self._hold

    def as_dict(self):
        return {"bound": self._bound, "hold": self._hold}

    def __repr__(self):
        return f"DisturbanceSpec(bound={self._bound}, hold={self._hold})"


def sample_disturbance(spec, random, dim):
    """
    One disturbance sample.

    Example
    -------

    .. doctest::

        >>> from numpy.random import RandomState
        >>> from stlppc.sim import DisturbanceSpec, sample_disturbance
        >>>
        >>> w = sample_disturbance(DisturbanceSpec(6.0), RandomState(0), 2)
        >>> bool((abs(w) <= 6).all())
        True
    """
    if spec.bound == 0:
        return zeros(dim)
    return random.uniform(-spec.bound, spec.bound, dim)


class DisturbanceStream:
    """
    Held disturbance samples of every agent, drawn in agent order.
    """

    def __init__(self, spec, dims, random):
        self._spec = spec
        self._dims = dict(sorted(dims.items()))
        self._random = random
        self._current = {i: zeros(n) for i, n in self._dims.items()}

    def at(self, step):
        if step % self._spec.hold == 0:
            self._current = {
                i: sample_disturbance(self._spec, self._random, n)
                for i, n in self._dims.items()
            }
        return self._current
