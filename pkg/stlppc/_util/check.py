from numpy import all as npall, asarray, isfinite


def check_vector(x, dim=None, name="vector"):
    x = asarray(x, float)
    if x.ndim != 1:
        raise ValueError(f"{name} must be a one-dimensional array.")

    if dim is not None and x.shape[0] != dim:
        raise ValueError(f"{name} must have dimension {dim}, got {x.shape[0]}.")

    if not npall(isfinite(x)):
        raise ValueError(f"{name} must have finite values only.")

    return x


def check_positive(v, name="value"):
    v = float(v)
    if not v > 0:
        raise ValueError(f"{name} must be positive, got {v}.")
    return v


def check_nonnegative(v, name="value"):
    v = float(v)
    if not v >= 0:
        raise ValueError(f"{name} must be non-negative, got {v}.")
    return v


def check_interval(a, b, name="interval"):
    a = float(a)
    b = float(b)
    if not (0 <= a <= b):
        raise ValueError(f"Malformed {name} [{a}, {b}]: expected 0 <= a <= b.")
    return a, b


def check_agent_ids(ids, name="agents"):
    ids = [int(i) for i in ids]
    if len(set(ids)) != len(ids):
        raise ValueError(f"{name} must not contain duplicates.")
    if any(i < 1 for i in ids):
        raise ValueError(f"{name} must hold positive agent ids.")
    return sorted(ids)
