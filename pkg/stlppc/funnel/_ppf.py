from numpy import any as npany, asarray, exp, ndim

from .._util import format_object


class PPF:
    """
    Exponential prescribed performance function.

    It evaluates to (v⁰ − v^∞)exp(−λt) + v^∞, which is positive, bounded by
    v⁰ and has derivative in [−λ(v⁰ − v^∞), 0].

    Parameters
    ----------
    v0 : float
        Value at t = 0.
    v_inf : float
        Asymptote, with 0 < v^∞ ≤ v⁰.
    decay : float
        Rate λ ≥ 0.

    Example
    -------

    .. doctest::

        >>> from numpy import log
        >>> from stlppc.funnel import PPF
        >>>
        >>> f = PPF(2.0, 0.5, 1.0)
        >>> print(f"{f.value(log(2)):.4f}")
        1.2500
        >>> f.derivative(0.0)
        -1.5
    """

    def __init__(self, v0, v_inf, decay=0.0):
        v0 = float(v0)
        v_inf = float(v_inf)
        decay = float(decay)
        if not (v0 >= v_inf > 0):
            raise ValueError(f"PPF needs v0 >= v_inf > 0, got v0={v0}, v_inf={v_inf}.")
        if not decay >= 0:
            raise ValueError(f"PPF decay must be non-negative, got {decay}.")
        self._v0 = v0
        self._v_inf = v_inf
        self._decay = decay

    @property
    def v0(self):
        return self._v0

    @property
    def v_inf(self):
        return self._v_inf

    @property
    def decay(self):
        return self._decay

    def value(self, t):
        t = _check_time(t)
        v = (self._v0 - self._v_inf) * exp(-self._decay * t) + self._v_inf
        return float(v) if ndim(v) == 0 else v

    def derivative(self, t):
        t = _check_time(t)
        d = -self._decay * (self._v0 - self._v_inf) * exp(-self._decay * t)
        return float(d) if ndim(d) == 0 else d

    def as_dict(self):
        return {"v0": self._v0, "v_inf": self._v_inf, "decay": self._decay}

    def __eq__(self, other):
        return isinstance(other, PPF) and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash((self._v0, self._v_inf, self._decay))

    def __repr__(self):
        return format_object(self, self.as_dict())


def ppf_eval(p, t):
    return p.value(t)


def ppf_deriv(p, t):
    return p.derivative(t)


def _check_time(t):
    t = asarray(t, float)
    if npany(t < 0):
        raise ValueError("Prescribed performance functions are defined for t >= 0.")
    return t
