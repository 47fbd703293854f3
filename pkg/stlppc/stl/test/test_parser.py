import pytest

from stlppc._util import FormulaError
from stlppc.stl import Atom, Conj, Predicate, TrueConst, parse_formula


def _table():
    return {
        f"p{i}": Predicate("norm2_le", {i: 1.0}, offset=[0, 0], radius_sq=1.0)
        for i in range(1, 6)
    }


def test_parser_conjunction():
    phi = parse_formula("G[1,2](p1 && p2 && p3)", _table())
    assert phi.op == "G"
    assert (phi.a, phi.b) == (1.0, 2.0)
    assert isinstance(phi.body, Conj)
    assert [t.name for t in phi.conjuncts] == ["p1", "p2", "p3"]
    assert phi.agents == (1, 2, 3)


def test_parser_true():
    phi = parse_formula("G[0,0](true)", {})
    assert phi.body == TrueConst()
    assert phi.end_time == 0


def test_parser_eventually_always():
    phi = parse_formula("F[1,2]G[0,0.5](p4)", _table())
    assert phi.op == "FG"
    assert phi.inner == (0.0, 0.5)
    assert phi.body == Atom("p4", None)


def test_parser_negation_and_spacing():
    phi = parse_formula("  F[ 0.5 , 3 ]( !p1&&true && p2 )", _table())
    assert phi.op == "F"
    assert phi.conjuncts[0].negated
    assert phi.conjuncts[1] == TrueConst()
    assert not phi.conjuncts[2].negated


def test_parser_roundtrip_fixpoint():
    table = _table()
    for text in [
        "G[1,2](p1 && p2 && p3)",
        "F[0,1e-3](!p5)",
        "F[1,2]G[0,0.5](p4 && !p1)",
        "G[0,0](true)",
    ]:
        phi = parse_formula(text, table)
        again = parse_formula(str(phi), table)
        assert again == phi
        assert str(again) == str(phi)


def test_parser_syntax_errors():
    with pytest.raises(FormulaError) as e:
        parse_formula("G[1,2](p1 || p2)", _table())
    assert e.value.position == 11

    with pytest.raises(FormulaError):
        parse_formula("G[1,2](p1", _table())

    with pytest.raises(FormulaError):
        parse_formula("G[1,2](!!p1)", _table())

    with pytest.raises(FormulaError):
        parse_formula("G[1,2](G[0,1](p1))", _table())

    with pytest.raises(FormulaError):
        parse_formula("G[1,2](!true)", _table())


def test_parser_unknown_predicate():
    with pytest.raises(FormulaError) as e:
        parse_formula("G[1,2](p1 && q)", _table())
    assert "q" in str(e.value)
    assert e.value.position == 14


def test_parser_malformed_interval():
    with pytest.raises(FormulaError):
        parse_formula("G[2,1](p1)", _table())

    with pytest.raises(FormulaError):
        parse_formula("F[0,1]G[3,2](p1)", _table())
