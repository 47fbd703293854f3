from numpy import array2string, asarray


def format_object(obj, params, attrs=None):
    """
    ``Type(key=value, ...): name`` followed by one indented line per attribute.

    Example
    -------

    .. doctest::

        >>> from stlppc._util import format_object
        >>>
        >>> class Box:
        ...     name = "unit"
        >>> print(format_object(Box(), {"dim": 2}, [("centre", [0.0, 0.5])]))
        Box(dim=2): unit
          centre: [0.  0.5]
    """
    head = type(obj).__name__
    head += "(" + ", ".join(f"{k}={v}" for k, v in params.items()) + ")"
    name = getattr(obj, "name", None)
    if name is not None:
        head += f": {name}"

    lines = [head]
    for label, value in attrs or []:
        lines.append(_format_attr(label, value))
    return "\n".join(lines)


def _format_attr(label, value):
    prefix = f"  {label}: "
    try:
        text = array2string(asarray(value, float), prefix=prefix)
    except (TypeError, ValueError):
        text = str(value)
    return prefix + text
