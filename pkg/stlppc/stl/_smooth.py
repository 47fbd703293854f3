from numpy import asarray, inf, isposinf, log
from scipy.special import logsumexp, softmax

from .._util import check_positive


class SmoothMinConfig:
    """
    Sharpness η of the smooth minimum.

    Larger η tightens the under-approximation of the exact minimum.
    """

    def __init__(self, eta=10.0):
        self.eta = check_positive(eta, "eta")

    def __repr__(self):
        return f"SmoothMinConfig(eta={self.eta})"

    def __eq__(self, other):
        return isinstance(other, SmoothMinConfig) and self.eta == other.eta

    def __hash__(self):
        return hash(self.eta)


def smooth_min(values, eta):
    """
    Log-sum-exp under-approximation of the minimum.

    It returns −η⁻¹ log Σⱼ exp(−ηvⱼ), which lies in [min(𝐯) − log(n)/η, min(𝐯)],
    together with the softmin weights ∂/∂vⱼ of that value. Entries equal to
    +∞ take part with weight zero.

    Parameters
    ----------
    values : array_like
        Non-empty sequence of reals.
    eta : float
        Sharpness η > 0.

    Returns
    -------
    value : float
        Smooth minimum.
    weights : ndarray
        Non-negative weights summing to one.

    Example
    -------

    .. doctest::

        >>> from stlppc.stl import smooth_min
        >>>
        >>> value, weights = smooth_min([2.0, 2.0], 10.0)
        >>> print(f"{value:.6f}")
        1.930685
        >>> print(weights)
        [0.5 0.5]
    """
    eta = check_positive(eta, "eta")
    v = asarray(values, float).ravel()
    if v.shape[0] == 0:
        raise ValueError("smooth_min needs at least one value.")

    if isposinf(v).all():
        w = asarray([1.0 / v.shape[0]] * v.shape[0])
        return inf, w

    if v.shape[0] == 1:
        return float(v[0]), asarray([1.0])

    z = -eta * v
    value = -float(logsumexp(z)) / eta
    weights = softmax(z)
    # keep the bounds exact under rounding
    vmin = float(v.min())
    value = min(max(value, vmin - log(v.shape[0]) / eta), vmin)
    return value, weights


def smooth_min_gap(n, eta):
    """
    Largest distance between the exact and smooth minimum of ``n`` values.
    """
    return log(n) / eta
