from numpy import arctan, asarray, cos, eye, sin, tanh, zeros
from numpy.linalg import matrix_rank

from .._util import check_vector

ZERO = "zero"
LINEAR = "linear"
LINEAR_NONLINEAR = "linear_nonlinear"

IDENTITY = "identity"
ROTATION = "rotation"
CONSTANT = "constant"

_FUNCTIONS = {"atan": arctan, "tanh": tanh, "sin": sin}


class AgentDynamics:
    """
    Control-affine agent dynamics ẋ = f(x) + g(x)u + w.

    Drift forms:

    - ``zero``: f(x) = 0;
    - ``linear``: f(x) = 𝙰x;
    - ``linear_nonlinear``: f(x) = 𝙰x plus terms gain·fn(𝐰ᵀx) added to one
      row each, with fn one of ``atan``, ``tanh`` or ``sin``.

    Input matrix forms:

    - ``identity``: g(x) = 𝙸;
    - ``rotation``: the 2×2 rotation by the angle scale·x[coordinate];
    - ``constant``: a fixed matrix with full row rank.

    Every form is locally Lipschitz and keeps g(x)g(x)ᵀ positive definite.

    Parameters
    ----------
    dim : int
        State dimension.
    drift : dict, optional
        ``{"form": ..., "A": ..., "terms": [...]}``. Defaults to ``zero``.
    input_matrix : dict, optional
        ``{"form": ..., "scale": ..., "coordinate": ..., "matrix": ...}``.
        Defaults to ``identity``.

    Example
    -------

    .. doctest::

        >>> from stlppc.sim import AgentDynamics
        >>>
        >>> dyn = AgentDynamics(2, {"form": "linear", "A": [[0, 1], [0, 0]]})
        >>> print(dyn.drift([1.0, 2.0]))
        [2. 0.]
        >>> print(dyn.input_matrix([1.0, 2.0]))
        [[1. 0.]
         [0. 1.]]
    """

    def __init__(self, dim, drift=None, input_matrix=None):
        self._dim = int(dim)
        if self._dim < 1:
            raise ValueError(f"State dimension must be positive, got {dim}.")
        self._drift = _parse_drift(self._dim, drift or {"form": ZERO})
        self._input = _parse_input(self._dim, input_matrix or {"form": IDENTITY})

    @property
    def dim(self):
        return self._dim

    @property
    def drift_form(self):
        return self._drift["form"]

    @property
    def input_form(self):
        return self._input["form"]

    def drift(self, x):
        x = check_vector(x, self._dim, "state")
        form = self._drift["form"]
        if form == ZERO:
            return zeros(self._dim)
        v = self._drift["A"] @ x
        for row, fn, gain, w in self._drift["terms"]:
            v[row] += gain * fn(w @ x)
        return v

    def input_matrix(self, x):
        x = check_vector(x, self._dim, "state")
        form = self._input["form"]
        if form == IDENTITY:
            return eye(self._dim)
        if form == ROTATION:
            a = self._input["scale"] * x[self._input["coordinate"]]
            return asarray([[cos(a), -sin(a)], [sin(a), cos(a)]])
        return self._input["matrix"].copy()

    def input_dim(self):
        if self._input["form"] == CONSTANT:
            return self._input["matrix"].shape[1]
        return self._dim

    def __repr__(self):
        return (
            f"AgentDynamics(dim={self._dim}, drift={self.drift_form},"
            f" input_matrix={self.input_form})"
        )


def eval_drift(dyn, x):
    return dyn.drift(x)


def eval_g(dyn, x):
    return dyn.input_matrix(x)


def _parse_drift(dim, spec):
    form = spec.get("form", ZERO)
    if form == ZERO:
        return {"form": ZERO}
    if form not in (LINEAR, LINEAR_NONLINEAR):
        raise ValueError(f"Unknown drift form: {form}.")

    A = asarray(spec.get("A", zeros((dim, dim))), float)
    if A.shape != (dim, dim):
        raise ValueError(f"Drift matrix must be {dim}x{dim}, got shape {A.shape}.")

    terms = []
    if form == LINEAR_NONLINEAR:
        for t in spec.get("terms", []):
            row = int(t["row"])
            if not 0 <= row < dim:
                raise ValueError(f"Drift term row {row} is outside [0, {dim}).")
            try:
                fn = _FUNCTIONS[t["fn"]]
            except KeyError:
                raise ValueError(f"Unknown drift function: {t['fn']}.")
            w = check_vector(t["weights"], dim, "drift term weights")
            terms.append((row, fn, float(t.get("gain", 1.0)), w))
    return {"form": form, "A": A, "terms": terms}


def _parse_input(dim, spec):
    form = spec.get("form", IDENTITY)
    if form == IDENTITY:
        return {"form": IDENTITY}
    if form == ROTATION:
        if dim != 2:
            raise ValueError("The rotation input matrix needs a two-dimensional state.")
        c = int(spec.get("coordinate", 0))
        if not 0 <= c < dim:
            raise ValueError(f"Rotation coordinate {c} is outside [0, {dim}).")
        return {"form": ROTATION, "scale": float(spec.get("scale", 1.0)), "coordinate": c}
    if form == CONSTANT:
        G = asarray(spec["matrix"], float)
        if G.ndim != 2 or G.shape[0] != dim:
            raise ValueError(f"Input matrix must have {dim} rows.")
        if matrix_rank(G) < dim:
            raise ValueError("Input matrix must have full row rank.")
        return {"form": CONSTANT, "matrix": G}
    raise ValueError(f"Unknown input matrix form: {form}.")
