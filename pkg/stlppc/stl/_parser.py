from lark import Lark, Token
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from .._util import FormulaError
from ._formula import Atom, Conj, Formula, TrueConst

GRAMMAR = r"""
?start: temporal

temporal: "G" interval "(" body ")"               -> always
        | "F" interval "(" body ")"               -> eventually
        | "F" interval "G" interval "(" body ")"  -> eventually_always

interval: "[" NUMBER "," NUMBER "]"

body: term ("&&" term)*

term: "!" IDENT  -> negated
    | IDENT      -> atom
    | "true"     -> true

IDENT: /[A-Za-z_][A-Za-z0-9_]*/
NUMBER: /[0-9]+(\.[0-9]*)?([eE][+-]?[0-9]+)?/
      | /\.[0-9]+([eE][+-]?[0-9]+)?/

%import common.WS
%ignore WS
"""

_parser = None


def _get_parser():
    global _parser
    if _parser is None:
        _parser = Lark(GRAMMAR, parser="lalr")
    return _parser


def parse_formula(text, predicate_table):
    """
    Parse formula text into a :class:`.Formula`.

    The grammar accepts ``G[a,b](ψ)``, ``F[a,b](ψ)`` and ``F[a,b]G[ā,b̄](ψ)``,
    where ψ is a ``&&``-separated list of predicate names, negated predicate
    names (``!name``) and ``true``.

    Parameters
    ----------
    text : str
        Formula text.
    predicate_table : dict
        Predicate name to :class:`.Predicate`.

    Returns
    -------
    :class:`.Formula`
        Parsed formula.

    Example
    -------

    .. doctest::

        >>> from stlppc.stl import Predicate, parse_formula
        >>>
        >>> p = Predicate("norm2_le", {4: 1.0}, offset=[0, 0], radius_sq=1.0)
        >>> phi = parse_formula("F[1,2]G[0,0.5](p4)", {"p4": p})
        >>> print(phi)
        F[1.0,2.0]G[0.0,0.5](p4)
        >>> parse_formula("G[2,1](p4)", {"p4": p})
        Traceback (most recent call last):
        ...
        stlppc._util.errors.FormulaError: Malformed interval [2.0, 1.0]: expected 0 <= a <= b.
    """
    if not isinstance(text, str):
        raise FormulaError("Formula text must be a string.")

    try:
        tree = _get_parser().parse(text)
    except UnexpectedEOF:
        raise FormulaError("Unexpected end of formula", position=len(text) + 1)
    except UnexpectedCharacters as e:
        raise FormulaError(f"Unexpected character {text[e.pos_in_stream]!r}", e.column)
    except UnexpectedInput as e:
        token = getattr(e, "token", None)
        if token is not None and token.type == "$END":
            raise FormulaError("Unexpected end of formula", position=len(text) + 1)
        msg = f"Unexpected token {str(token)!r}" if token is not None else "Syntax error"
        raise FormulaError(msg, getattr(e, "column", None))

    return _translate(tree, predicate_table)


def _translate(ast, table):
    kind = ast.data
    args = ast.children

    if kind == "always":
        a, b = _interval(args[0])
        return Formula("G", a, b, _body(args[1], table))

    if kind == "eventually":
        a, b = _interval(args[0])
        return Formula("F", a, b, _body(args[1], table))

    if kind == "eventually_always":
        a, b = _interval(args[0])
        inner = _interval(args[1])
        return Formula("FG", a, b, _body(args[2], table), inner=inner)

    raise FormulaError(f"Unexpected node: {kind}.")


def _interval(ast):
    return tuple(float(t.value) for t in ast.children)


def _body(ast, table):
    terms = tuple(_term(t, table) for t in ast.children)
    if len(terms) == 1:
        return terms[0]
    return Conj(terms)


def _term(ast, table):
    if ast.data == "true":
        return TrueConst()

    name = ast.children[0]
    assert isinstance(name, Token)
    if name.value not in table:
        raise FormulaError(f"Unknown predicate name: {name.value}", name.column)

    return Atom(name.value, table[name.value], negated=ast.data == "negated")
