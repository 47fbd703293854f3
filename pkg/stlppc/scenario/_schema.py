import re
from typing import Any, Dict, List, Literal, Optional

from numpy import asarray
from pydantic import BaseModel, ConfigDict, Field, ValidationError, conlist, model_validator

from .._util import ScenarioError, check_agent_ids

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class DriftTerm(_Strict):
    row: int = Field(ge=0)
    fn: Literal["atan", "tanh", "sin"]
    gain: Optional[float] = None
    weights: List[float]


class Drift(_Strict):
    form: Literal["zero", "linear", "linear_nonlinear"]
    A: Optional[List[List[float]]] = None
    terms: List[DriftTerm] = []


class InputMatrix(_Strict):
    form: Literal["identity", "rotation", "constant"]
    scale: Optional[float] = None
    coordinate: Optional[int] = Field(None, ge=0)
    matrix: Optional[List[List[float]]] = None


class Dynamics(_Strict):
    drift: Optional[Drift] = None
    input_matrix: Optional[InputMatrix] = None


class AgentEntry(_Strict):
    id: int = Field(ge=1)
    dim: int = Field(ge=1)
    initial_state: List[float]
    dynamics: Optional[Dynamics] = None

    @model_validator(mode="after")
    def _state_dim(self):
        if len(self.initial_state) != self.dim:
            raise ValueError(f"initial_state must have {self.dim} entries")
        return self


class PredicateEntry(_Strict):
    kind: Literal["norm2_le", "linear"]
    coeffs: Dict[str, Any] = Field(min_length=1)
    offset: Optional[List[float]] = None
    radius_sq: Optional[float] = Field(None, gt=0)
    bias: Optional[float] = None


class TaskEntry(_Strict):
    name: str = Field(pattern=r"^[A-Za-z0-9]+$")
    agent: int = Field(ge=1)
    formula: str
    rho_max: float = Field(gt=0)
    r_target: float = Field(gt=0)
    gamma_width: Optional[float] = Field(None, ge=0)
    t_star: Optional[float] = Field(None, ge=0)
    bound_radius: Optional[float] = Field(None, gt=0)


class PPFEntry(_Strict):
    v0: float = Field(gt=0)
    v_inf: float = Field(gt=0)
    decay: Optional[float] = Field(None, ge=0)

    @model_validator(mode="after")
    def _ordered(self):
        if self.v_inf > self.v0:
            raise ValueError("v_inf must not exceed v0")
        return self


class ObserverEntry(_Strict):
    alpha: Optional[float] = Field(None, gt=0)
    delta: PPFEntry
    rho: PPFEntry
    init_perturbation: Optional[float] = Field(None, ge=0)


class DisturbanceEntry(_Strict):
    bound: Optional[float] = Field(None, ge=0)
    hold: Optional[int] = Field(None, ge=1)


class ControllerEntry(_Strict):
    mode: Optional[Literal["transpose", "sign"]] = None
    signs: Dict[str, Literal[1, -1]] = {}


class ScenarioDocument(_Strict):
    """
    Structure of a scenario document. Cross references between its parts
    are checked by :func:`validate_document`.
    """

    name: str
    description: Optional[str] = None
    horizon: float = Field(gt=0)
    dt: float = Field(gt=0)
    seed: Optional[int] = Field(None, ge=0)
    eta: Optional[float] = Field(None, gt=0)
    coupling: Optional[Literal["zoh", "stagewise"]] = None
    agents: List[AgentEntry] = Field(min_length=1)
    communication_edges: List[conlist(int, min_length=2, max_length=2)]
    predicates: Dict[str, PredicateEntry]
    tasks: List[TaskEntry]
    observer: Optional[ObserverEntry] = None
    disturbance: Optional[DisturbanceEntry] = None
    controller: Optional[ControllerEntry] = None


def validate_document(doc):
    """
    Check a scenario document against the schema.

    The structure is validated first, every problem reported with its JSON
    path; the cross references (agent ids, dimensions, task owners) are
    checked once the structure is sound.

    Raises
    ------
    ScenarioError
        Listing every schema violation.

    Example
    -------

    .. doctest::

        >>> from stlppc.scenario import validate_document
        >>> from stlppc._util import ScenarioError
        >>>
        >>> try:
        ...     validate_document({"name": "empty", "horizon": 0})
        ... except ScenarioError as e:
        ...     print(e.errors[:2])
        ['$.horizon: must be positive', '$.dt: missing']
    """
    try:
        model = ScenarioDocument.model_validate(doc)
    except ValidationError as e:
        raise ScenarioError(_messages(e))

    errors = []
    dims = _check_agents(model, errors)
    _check_edges(model, dims, errors)
    _check_predicates(model, dims, errors)
    _check_tasks(model, dims, errors)
    _check_controller(model, dims, errors)
    if errors:
        raise ScenarioError(errors)
    return doc


def json_path(loc):
    """
    JSON path of a pydantic error location.

    Example
    -------

    .. doctest::

        >>> from stlppc.scenario._schema import json_path
        >>>
        >>> json_path(("agents", 1, "initial_state"))
        '$.agents[1].initial_state'
    """
    path = "$"
    for part in loc:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def _messages(error):
    out = []
    for e in error.errors():
        loc = tuple(e["loc"])
        if loc[:1] == ("communication_edges",) and len(loc) > 1:
            msg = f"{json_path(loc[:2])}: must be a pair of agent ids"
        else:
            msg = f"{json_path(loc)}: {_describe(e)}"
        if msg not in out:
            out.append(msg)
    return out


def _describe(e):
    kind = e["type"]
    ctx = e.get("ctx", {})
    if kind == "missing":
        return "missing"
    if kind == "extra_forbidden":
        return "unknown field"
    if kind == "greater_than":
        return "must be positive" if ctx["gt"] == 0 else f"must exceed {ctx['gt']}"
    if kind == "greater_than_equal":
        return "must be non-negative" if ctx["ge"] == 0 else f"must be at least {ctx['ge']}"
    if kind in ("float_type", "float_parsing"):
        return "must be a number"
    if kind in ("int_type", "int_parsing", "int_from_float"):
        return "must be an integer"
    if kind == "string_type":
        return "must be a string"
    if kind == "string_pattern_mismatch":
        return "must be alphanumeric"
    if kind == "literal_error":
        return "must be " + ctx["expected"].replace("'", "")
    if kind in ("list_type", "tuple_type"):
        return "must be an array"
    if kind in ("model_type", "model_attributes_type", "dict_type"):
        return "must be an object"
    if kind == "too_short":
        return "must not be empty"
    if kind == "value_error":
        return str(ctx["error"])
    return e["msg"]


def _shape(value):
    try:
        return asarray(value, float).shape
    except (TypeError, ValueError):
        return None


def _check_agents(model, errors):
    dims = {a.id: a.dim for a in model.agents}
    try:
        ids = check_agent_ids([a.id for a in model.agents], "agent ids")
    except ValueError as e:
        errors.append(f"$.agents: {e}")
        ids = sorted(dims)
    if ids != list(range(1, len(ids) + 1)):
        errors.append("$.agents: agent ids must be 1, 2, ..., N")

    for k, a in enumerate(model.agents):
        if a.dynamics is not None:
            _check_dynamics(a.dynamics, f"$.agents[{k}].dynamics", a.dim, errors)
    return dims


def _check_dynamics(dyn, path, n, errors):
    drift = dyn.drift
    if drift is not None and drift.form != "zero":
        if drift.A is None:
            errors.append(f"{path}.drift.A: missing")
        elif _shape(drift.A) != (n, n):
            errors.append(f"{path}.drift.A: must be a {n}x{n} matrix")
        for k, t in enumerate(drift.terms):
            tpath = f"{path}.drift.terms[{k}]"
            if t.row >= n:
                errors.append(f"{tpath}.row: must be below {n}")
            if len(t.weights) != n:
                errors.append(f"{tpath}.weights: must have {n} entries")

    g = dyn.input_matrix
    if g is None:
        return
    gpath = f"{path}.input_matrix"
    if g.form == "rotation":
        if n != 2:
            errors.append(f"{gpath}: rotation needs a two-dimensional state")
        elif g.coordinate is not None and g.coordinate >= n:
            errors.append(f"{gpath}.coordinate: must be below {n}")
    elif g.form == "constant":
        shape = None if g.matrix is None else _shape(g.matrix)
        if g.matrix is None:
            errors.append(f"{gpath}.matrix: missing")
        elif shape is None or len(shape) != 2 or shape[0] != n:
            errors.append(f"{gpath}.matrix: must be a matrix with {n} rows")


def _check_edges(model, dims, errors):
    for k, (i, j) in enumerate(model.communication_edges):
        path = f"$.communication_edges[{k}]"
        for v in (i, j):
            if v not in dims:
                errors.append(f"{path}: unknown agent {v}")
        if i == j:
            errors.append(f"{path}: self-loops are not allowed")


def _check_predicates(model, dims, errors):
    for name, p in model.predicates.items():
        path = f"$.predicates.{name}"
        if not _IDENT.match(name) or name == "true":
            errors.append(f"{path}: predicate names must be identifiers other than 'true'")
        q = None
        for key, value in p.coeffs.items():
            cpath = f"{path}.coeffs.{key}"
            if not key.isdigit() or int(key) not in dims:
                errors.append(f"{cpath}: unknown agent")
                continue
            n = dims[int(key)]
            rows = _coeff_rows(p.kind, _shape(value), n)
            if rows is None:
                what = "an array of" if p.kind == "linear" else "a number, an array or rows of"
                errors.append(f"{cpath}: must be {what} {n} numbers")
            elif q is not None and rows != q:
                errors.append(f"{cpath}: must map into dimension {q}")
            else:
                q = rows
        if p.kind == "norm2_le":
            if p.radius_sq is None:
                errors.append(f"{path}.radius_sq: missing")
            if p.offset is not None and q is not None and len(p.offset) != q:
                errors.append(f"{path}.offset: must have {q} entries")


def _coeff_rows(kind, shape, n):
    if shape is None:
        return None
    if kind == "linear":
        return n if shape == (n,) else None
    if shape == () or shape == (n,):
        return n
    if len(shape) == 2 and shape[0] > 0 and shape[1] == n:
        return shape[0]
    return None


def _check_tasks(model, dims, errors):
    names = set()
    owners = set()
    for k, t in enumerate(model.tasks):
        path = f"$.tasks[{k}]"
        if t.name in names:
            errors.append(f"{path}.name: duplicate task name {t.name}")
        names.add(t.name)
        if t.agent not in dims:
            errors.append(f"{path}.agent: unknown agent {t.agent}")
        if t.agent in owners:
            errors.append(f"{path}.agent: agent {t.agent} already owns a task")
        owners.add(t.agent)


def _check_controller(model, dims, errors):
    if model.controller is None:
        return
    for key in model.controller.signs:
        if not key.isdigit() or int(key) not in dims:
            errors.append(f"$.controller.signs.{key}: unknown agent")
