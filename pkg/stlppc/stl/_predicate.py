from numpy import abs as npabs, asarray, diag, eye, zeros
from numpy.linalg import norm

from .._util import check_positive, check_vector, format_object

NORM2_LE = "norm2_le"
LINEAR = "linear"


class Predicate:
    """
    Concave atomic predicate over the states of a set of agents.

    Two kinds are supported:

    - ``norm2_le``: ρ(𝐱) = r² − ‖Σⱼ 𝙲ⱼ𝐱ⱼ − 𝐝‖², maximised at Σⱼ 𝙲ⱼ𝐱ⱼ = 𝐝;
    - ``linear``: ρ(𝐱) = Σⱼ 𝐚ⱼᵀ𝐱ⱼ + b.

    A scalar coefficient c of a ``norm2_le`` predicate stands for c𝙸 and a
    one-dimensional coefficient stands for a diagonal matrix.

    Parameters
    ----------
    kind : str
        ``"norm2_le"`` or ``"linear"``.
    coeffs : dict
        Agent id to coefficient: 𝙲ⱼ for ``norm2_le``, 𝐚ⱼ for ``linear``.
    offset : array_like, optional
        Centre 𝐝 (``norm2_le`` only).
    radius_sq : float, optional
        Squared radius r² > 0 (``norm2_le`` only).
    bias : float, optional
        Constant b (``linear`` only). Defaults to ``0``.
    name : str, optional
        Predicate name.

    Example
    -------

    .. doctest::

        >>> from stlppc.stl import Predicate
        >>>
        >>> p = Predicate("norm2_le", {1: 1.0, 2: -1.0}, offset=[0, 0],
        ...               radius_sq=26.75, name="p12")
        >>> p.agents
        (1, 2)
        >>> p.value({1: [1.0, 2.0], 2: [1.0, 2.0]})
        26.75
        >>> print(p.gradient({1: [1.0, 2.0], 2: [0.0, 0.0]}, 1))
        [-2. -4.]
    """

    def __init__(
        self, kind, coeffs, offset=None, radius_sq=None, bias=None, name=None
    ):
        if kind not in (NORM2_LE, LINEAR):
            raise ValueError(f"Unknown predicate kind: {kind}.")

        if len(coeffs) == 0:
            raise ValueError("A predicate must read at least one agent.")

        self._kind = kind
        self.name = name
        self._agents = tuple(sorted(int(j) for j in coeffs.keys()))
        if len(self._agents) != len(coeffs):
            raise ValueError("Predicate agents must be distinct.")

        if kind == NORM2_LE:
            if offset is None:
                raise ValueError("A norm2_le predicate requires an offset.")
            self._offset = check_vector(offset, name="offset")
            self._radius_sq = check_positive(radius_sq, "radius_sq")
            self._bias = None
            q = self._offset.shape[0]
            self._coeffs = {
                int(j): _as_matrix(c, q, j) for j, c in coeffs.items()
            }
        else:
            self._offset = None
            self._radius_sq = None
            self._bias = 0.0 if bias is None else float(bias)
            self._coeffs = {
                int(j): check_vector(c, name=f"coefficient of agent {j}")
                for j, c in coeffs.items()
            }
            if all(not npabs(c).any() for c in self._coeffs.values()):
                raise ValueError("A linear predicate needs a nonzero coefficient.")

        for c in self._coeffs.values():
            c.setflags(write=False)

    @classmethod
    def bound(cls, dims, radius, name=None):
        """
        Predicate ‖𝐱‖² ≤ C̄² over the stacked states of several agents.

        Parameters
        ----------
        dims : dict
            Agent id to state dimension.
        radius : float
            Bound C̄ > 0.
        name : str, optional
            Predicate name.
        """
        radius = check_positive(radius, "bound radius")
        agents = sorted(int(j) for j in dims)
        q = sum(int(dims[j]) for j in agents)
        coeffs = {}
        row = 0
        for j in agents:
            n = int(dims[j])
            C = zeros((q, n))
            C[row : row + n, :] = eye(n)
            coeffs[j] = C
            row += n
        return cls(NORM2_LE, coeffs, offset=zeros(q), radius_sq=radius ** 2, name=name)

    @property
    def kind(self):
        return self._kind

    @property
    def agents(self):
        """
        Sorted ids of the agents read by the predicate.
        """
        return self._agents

    @property
    def radius_sq(self):
        return self._radius_sq

    @property
    def radius(self):
        return self._radius_sq ** 0.5

    @property
    def offset(self):
        return self._offset

    @property
    def bias(self):
        return self._bias

    def coeff(self, agent):
        return self._coeffs[agent]

    def dim(self, agent):
        """
        State dimension the predicate expects for ``agent``.
        """
        c = self._coeffs[agent]
        return c.shape[1] if c.ndim == 2 else c.shape[0]

    def coeff_norm(self, agent):
        """
        Gain from the estimation error of ``agent`` to the predicate argument.

        Spectral norm of 𝙲ⱼ for ``norm2_le`` and ℓ₁ norm of 𝐚ⱼ for ``linear``.
        """
        c = self._coeffs[agent]
        if self._kind == NORM2_LE:
            return float(norm(c, 2))
        return float(npabs(c).sum())

    def reads(self, agent):
        return agent in self._coeffs

    def residual(self, xs):
        """
        Σⱼ 𝙲ⱼ𝐱ⱼ − 𝐝 for a ``norm2_le`` predicate.
        """
        y = -self._offset
        for j in self._agents:
            y = y + self._coeffs[j] @ self._state(xs, j)
        return y

    def value(self, xs):
        """
        Predicate value ρ(𝐱).

        Parameters
        ----------
        xs : dict
            Agent id to state vector; must cover :attr:`agents`.

        Returns
        -------
        float
            ρ(𝐱).
        """
        if self._kind == NORM2_LE:
            y = self.residual(xs)
            return float(self._radius_sq - y @ y)

        v = self._bias
        for j in self._agents:
            v += float(self._coeffs[j] @ self._state(xs, j))
        return float(v)

    def gradient(self, xs, agent):
        """
        Derivative ∂ρ/∂𝐱ₐ.

        It is −2𝙲ₐᵀ(Σⱼ 𝙲ⱼ𝐱ⱼ − 𝐝) for ``norm2_le``, 𝐚ₐ for ``linear``, and the
        zero vector if the predicate does not read ``agent``.
        """
        if agent not in self._coeffs:
            if agent in xs:
                return zeros(asarray(xs[agent]).shape[0])
            raise ValueError(f"Missing state for agent {agent}.")

        if self._kind == NORM2_LE:
            y = self.residual(xs)
            return -2 * (self._coeffs[agent].T @ y)

        self._state(xs, agent)
        return self._coeffs[agent].copy()

    def _state(self, xs, agent):
        try:
            x = xs[agent]
        except KeyError:
            raise ValueError(f"Missing state for agent {agent}.")
        x = asarray(x, float)
        n = self.dim(agent)
        if x.shape != (n,):
            msg = f"State of agent {agent} must have dimension {n}"
            raise ValueError(msg + f", got shape {x.shape}.")
        return x

    def __repr__(self):
        params = {"kind": self._kind, "agents": list(self._agents)}
        return format_object(self, params)

    def __str__(self):
        params = {"kind": self._kind, "agents": list(self._agents)}
        if self._kind == NORM2_LE:
            attrs = [("offset", self._offset), ("radius_sq", self._radius_sq)]
        else:
            attrs = [("bias", self._bias)]
        return format_object(self, params, attrs)


def eval_predicate(pred, xs):
    """
    Evaluate ``pred`` at the agent states ``xs``.
    """
    return pred.value(xs)


def grad_predicate(pred, xs, agent):
    """
    Gradient of ``pred`` with respect to the state of ``agent``.
    """
    return pred.gradient(xs, agent)


def _as_matrix(c, q, agent):
    c = asarray(c, float)
    if c.ndim == 0:
        return float(c) * eye(q)
    if c.ndim == 1:
        if c.shape[0] != q:
            raise ValueError(f"Coefficient of agent {agent} must have length {q}.")
        return diag(c)
    if c.ndim == 2 and c.shape[0] == q:
        return c.copy()
    raise ValueError(f"Coefficient of agent {agent} must have {q} rows.")
