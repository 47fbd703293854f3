from dataclasses import dataclass

from numpy import log

from .._util import FunnelError, clamp_open


def normalized_error(rho_hat, rho_max, Gamma, return_clamped=False):
    """
    Normalised funnel error e = (ρ̂ − ρ^max)/Γ.

    Values outside (−1, 0) are clamped to [−1 + εc, −εc] with εc = 1e-9.

    Parameters
    ----------
    rho_hat : float
        Estimated robustness ρ̂.
    rho_max : float
        Upper funnel boundary.
    Gamma : float
        Funnel width Γ(t) > 0.
    return_clamped : bool, optional
        Also return whether the value had to be clamped.

    Example
    -------

    .. doctest::

        >>> from stlppc.control import normalized_error
        >>>
        >>> normalized_error(5.0, 6.0, 2.0)
        -0.5
        >>> normalized_error(6.0, 6.0, 2.0, return_clamped=True)
        (-1e-09, True)
    """
    Gamma = float(Gamma)
    if not Gamma > 0:
        raise FunnelError(f"Funnel width must be positive, got {Gamma}.")
    e, clamped = clamp_open((float(rho_hat) - float(rho_max)) / Gamma, -1.0, 0.0)
    if return_clamped:
        return e, clamped
    return e


def transform(e):
    """
    Transformed error ε = log(−(e + 1)/e) and its Jacobian −1/(e(e + 1)).

    Example
    -------

    .. doctest::

        >>> from stlppc.control import transform
        >>>
        >>> transform(-0.5)
        (0.0, 4.0)
    """
    e = float(e)
    if not -1 < e < 0:
        raise FunnelError(f"Normalised error {e} is outside (-1, 0).")
    return float(log(-(e + 1) / e)), float(-1 / (e * (e + 1)))


@dataclass(frozen=True)
class ErrorTransform:
    """
    Normalised error ``e`` ∈ (−1, 0) with its transformed value ``eps`` and
    Jacobian ``jac``.
    """

    e: float
    eps: float
    jac: float

    @classmethod
    def at(cls, e):
        eps, jac = transform(e)
        return cls(float(e), eps, jac)

    @property
    def gain(self):
        return self.jac * self.eps
