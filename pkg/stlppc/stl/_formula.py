from dataclasses import dataclass, field
from typing import Optional, Tuple

from .._util import FormulaError, check_interval
from ._predicate import Predicate

ALWAYS = "G"
EVENTUALLY = "F"
EVENTUALLY_ALWAYS = "FG"


@dataclass(frozen=True)
class TrueConst:
    """
    The constant ``true``.
    """

    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Atom:
    """
    Named predicate, optionally negated.

    Two atoms are equal when their names and polarities match.
    """

    name: str
    predicate: Predicate = field(compare=False, repr=False)
    negated: bool = False

    def __str__(self):
        return ("!" if self.negated else "") + self.name


@dataclass(frozen=True)
class Conj:
    """
    Conjunction of atoms and constants.
    """

    terms: Tuple

    def __post_init__(self):
        if len(self.terms) < 2:
            raise FormulaError("A conjunction needs at least two terms.")
        for t in self.terms:
            if not isinstance(t, (Atom, TrueConst)):
                raise FormulaError("Conjunction terms must be atoms or true.")

    def __str__(self):
        return " && ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class Formula:
    """
    Temporal formula with exactly one wrapper at the root.

    ``op`` is ``"G"``, ``"F"`` or ``"FG"``; ``a`` and ``b`` bound the outer
    interval and ``inner`` holds (ā, b̄) for ``"FG"``.

    Example
    -------

    .. doctest::

        >>> from stlppc.stl import Atom, Formula, Predicate
        >>>
        >>> p = Predicate("linear", {1: [1.0, 0.0]}, bias=-1.0)
        >>> phi = Formula("F", 1.0, 2.0, Atom("p", p), inner=(0.0, 0.5))
        Traceback (most recent call last):
        ...
        stlppc._util.errors.FormulaError: Only FG formulas take an inner interval.
        >>> phi = Formula("FG", 1.0, 2.0, Atom("p", p), inner=(0.0, 0.5))
        >>> print(phi)
        F[1.0,2.0]G[0.0,0.5](p)
        >>> phi.end_time
        2.5
    """

    op: str
    a: float
    b: float
    body: object
    inner: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.op not in (ALWAYS, EVENTUALLY, EVENTUALLY_ALWAYS):
            raise FormulaError(f"Unknown temporal operator: {self.op}.")

        try:
            a, b = check_interval(self.a, self.b)
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
            if self.op == EVENTUALLY_ALWAYS:
                if self.inner is None:
                    raise FormulaError("FG formulas need an inner interval.")
                inner = check_interval(*self.inner, name="inner interval")
                object.__setattr__(self, "inner", inner)
            elif self.inner is not None:
                raise FormulaError("Only FG formulas take an inner interval.")
        except FormulaError:
            raise
        except ValueError as e:
            raise FormulaError(str(e))

        if not isinstance(self.body, (Atom, TrueConst, Conj)):
            raise FormulaError("The body must be a non-temporal formula.")

    @property
    def conjuncts(self):
        """
        Top-level conjuncts of the body.
        """
        return conjuncts(self.body)

    @property
    def predicates(self):
        return predicates(self.body)

    @property
    def agents(self):
        return body_agents(self.body)

    @property
    def end_time(self):
        """
        Latest time the formula reads, evaluated at t = 0.
        """
        if self.op == EVENTUALLY_ALWAYS:
            return self.b + self.inner[1]
        return self.b

    def satisfaction_instant(self, t_star=None):
        """
        Instant t* from which the funnel must certify satisfaction.

        ``a`` for G and FG; ``t_star`` (default: the midpoint of [a, b]) for F.
        """
        if self.op == EVENTUALLY:
            if t_star is None:
                return (self.a + self.b) / 2
            t_star = float(t_star)
            if not (self.a <= t_star <= self.b):
                raise FormulaError(f"t_star={t_star} is outside [{self.a}, {self.b}].")
            return t_star
        return self.a

    def satisfaction_window(self, t_star=None):
        """
        Time window over which the body must hold for the funnel design.
        """
        ts = self.satisfaction_instant(t_star)
        if self.op == ALWAYS:
            return (self.a, self.b)
        if self.op == EVENTUALLY:
            return (ts, ts)
        return (ts + self.inner[0], ts + self.inner[1])

    def __str__(self):
        head = f"{self.op[0]}[{self.a!r},{self.b!r}]"
        if self.op == EVENTUALLY_ALWAYS:
            head += f"G[{self.inner[0]!r},{self.inner[1]!r}]"
        return f"{head}({self.body})"


def conjuncts(body):
    if isinstance(body, Conj):
        return body.terms
    return (body,)


def predicates(body):
    """
    Predicates read by a body, in order of first appearance.
    """
    seen = []
    for t in conjuncts(body):
        if isinstance(t, Atom) and t.predicate not in seen:
            seen.append(t.predicate)
    return tuple(seen)


def body_agents(body):
    ids = set()
    for p in predicates(body):
        ids.update(p.agents)
    return tuple(sorted(ids))


def conjoin(body, term):
    """
    Body extended with one more conjunct.
    """
    return Conj(conjuncts(body) + (term,))
