from numpy import clip

__all__ = ["clamp_eps", "clamp_open"]

# Distance kept from the open-interval boundaries of normalised errors.
clamp_eps = 1e-9


def clamp_open(x, lower, upper, eps=clamp_eps):
    """
    Clamp ``x`` into the open interval (lower, upper) shrunk by ``eps``.

    Returns
    -------
    value : float or ndarray
        Clamped value.
    clamped : bool
        ``True`` if any entry had to be moved.

    Example
    -------

    .. doctest::

        >>> from stlppc._util import clamp_open
        >>> clamp_open(0.5, -1.0, 1.0)
        (0.5, False)
        >>> clamp_open(2.0, -1.0, 0.0, eps=0.25)
        (-0.25, True)
    """
    lo = lower + eps
    hi = upper - eps
    y = clip(x, lo, hi)
    if hasattr(y, "shape") and y.shape != ():
        return y, bool((y != x).any())
    return float(y), bool(y != x)
