"""
Tests for the .ck tokenizer, parser, pretty-printer and session evaluator
"""
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from error_handler import CharacteristicMismatch, ScriptSyntaxError, UndeclaredIdentifier
from field_poly import polynomial_ring
from groebner import Ideal
from script_parser import (
    BinOp, IdealLiteral, IdealRef, Neg, Num, Pow, RingDecl, Session, Var, format_expr,
    format_script, parse_expression, parse_polynomial, parse_polynomial_list, parse_script, tokenize,
)

CORPUS = Path(__file__).parent / 'corpus'


def test_tokenizer_handles_comments_and_brackets() -> None:
    tokens = tokenize("ideal I = (x**2,\n  y)  # trailing\n")
    kinds = [t.kind for t in tokens]
    assert kinds.count('NEWLINE') == 1
    assert [t.text for t in tokens if t.kind == 'OP'] == ['=', '(', '^', ',', ')']
    assert tokens[-1].kind == 'EOF'


def test_unclosed_bracket_points_at_opener() -> None:
    with pytest.raises(ScriptSyntaxError) as info:
        parse_script("ideal I = (x +")
    assert info.value.line == 1
    assert info.value.column == 11
    assert "unclosed '('" in str(info.value)


def test_syntax_error_positions() -> None:
    with pytest.raises(ScriptSyntaxError) as info:
        parse_script("ring S = GF(5)[x, y]\nideal I = (x + )")
    assert (info.value.line, info.value.column) == (2, 16)
    with pytest.raises(ScriptSyntaxError):
        parse_script("ring S = GF(5)[x] order=weird")
    with pytest.raises(ScriptSyntaxError):
        parse_script("ring S = GF(5)[x]\nmodule M = coker [[x, 1]; [x]]")
    with pytest.raises(ScriptSyntaxError):
        parse_script("ring S = GF(5)[x] $")
    with pytest.raises(ScriptSyntaxError):
        parse_script("ring S = GF(5)[x]\nparams P = {J1=(x), m=1, x=[x], q=2}")


def test_ring_declaration_forms() -> None:
    script = parse_script("ring S = GF(7)[a, b, c] order=elim(1); ring T = GF(3)[x]")
    first, second = script.statements
    assert first == RingDecl('S', 7, ('a', 'b', 'c'), 'elim', 1)
    assert second.order == 'grevlex'


def test_resolution_errors() -> None:
    with pytest.raises(UndeclaredIdentifier):
        parse_script("ideal I = (x)")
    with pytest.raises(UndeclaredIdentifier) as info:
        parse_script("ring S = GF(5)[x, y]\nideal I = (x, w)")
    assert (info.value.line, info.value.column) == (2, 15)
    with pytest.raises(UndeclaredIdentifier):
        parse_script("ring S = GF(5)[x]\nquotient R = T / (x)")
    with pytest.raises(ScriptSyntaxError):
        parse_script("ring S = GF(5)[x]\nideal I = (x)\nideal I = (x^2)")
    with pytest.raises(ScriptSyntaxError):
        parse_script("ring S = GF(5)[x, x]")
    with pytest.raises(ScriptSyntaxError):
        parse_script("ring S = GF(5)[x]\nparams P = {J1=(x), m=1}")


def test_characteristic_mismatch() -> None:
    text = (
        "ring A = GF(5)[x, y]\n"
        "ideal I = (x)\n"
        "ring B = GF(7)[x, y]\n"
        "params P = {J1=I, m=1, x=[x, y]}\n"
    )
    with pytest.raises(CharacteristicMismatch):
        parse_script(text)


def test_params_values() -> None:
    script = parse_script("ring S = GF(3)[x, y]\nideal J = (x)\nparams P = {J1=J, m=2, x=[x, y], u=x - y, K1=(x, y)}")
    entries = dict(script.statements[-1].entries)
    assert entries['J1'] == IdealRef('J')
    assert entries['m'] == Num(2)
    assert entries['u'] == BinOp('-', Var('x'), Var('y'))
    assert isinstance(entries['K1'], IdealLiteral)


def test_check_arguments_are_kept_as_text() -> None:
    script = parse_script("ring S = GF(5)[x, y]\ncheck colon-lemma params=P exps=[2, 3] emax=1")
    check = script.statements[-1]
    assert check.command == 'colon-lemma'
    assert dict(check.args) == {'params': 'P', 'exps': '2,3', 'emax': '1'}


def test_expression_precedence() -> None:
    assert parse_expression("-x^2") == Neg(Pow(Var('x'), 2))
    assert parse_expression("x - y - z") == BinOp('-', BinOp('-', Var('x'), Var('y')), Var('z'))
    assert format_expr(BinOp('-', Var('x'), BinOp('-', Var('y'), Var('z')))) == "x - (y - z)"
    assert format_expr(Pow(Neg(Var('x')), 2)) == "(-x)^2"


def test_polynomial_lists() -> None:
    S = polynomial_ring(5, 'x,y')
    x, y = S.gens()
    assert parse_polynomial("(x+y)*(x-y)", S) == x ** 2 - y ** 2
    assert parse_polynomial_list("(x+y)*(x-y), y", S) == [x ** 2 - y ** 2, y]
    assert parse_polynomial_list("[x, y^2]", S) == [x, y ** 2]
    assert parse_polynomial_list("(x, y)", S) == [x, y]
    assert parse_polynomial_list("", S) == []
    with pytest.raises(UndeclaredIdentifier):
        parse_polynomial("z", S)


def expressions():
    leaves = st.one_of(
        st.integers(0, 20).map(Num),
        st.sampled_from(['x', 'y', 'z']).map(Var),
    )

    def extend(children):
        return st.one_of(
            children.map(Neg),
            st.tuples(children, st.integers(0, 4)).map(lambda a: Pow(*a)),
            st.tuples(st.sampled_from('+-*'), children, children).map(lambda a: BinOp(*a)),
        )

    return st.recursive(leaves, extend, max_leaves=8)


@given(expressions())
def test_printed_expressions_parse_back(expr) -> None:
    assert parse_expression(format_expr(expr)) == expr


@pytest.mark.parametrize('name', ['regular.ck', 'quadric.ck', 'cubic_cone.ck', 'twisted_cubic.ck'])
def test_corpus_scripts_survive_printing(name) -> None:
    script = parse_script((CORPUS / name).read_text())
    assert parse_script(format_script(script)) == script


def test_session_from_quadric_script() -> None:
    session = Session.from_text((CORPUS / 'quadric.ck').read_text())
    S = session.ring
    x, y, z = S.gens()
    assert session.current.name == 'R'
    assert session.ideal('I') == Ideal(S, [x, y])
    assert session.ideal_context('I').equal(Ideal(S, [z ** 2]), Ideal(S, [x * y]))
    params = session.suitable('C')
    assert params.J1 == Ideal(S, [x])
    assert params.a2 == x
    assert session.suitable('G').u == z
    assert [c.command for c in session.checks][:2] == ['ehk', 'ehk']
    with pytest.raises(UndeclaredIdentifier):
        session.ideal('nope')
    with pytest.raises(UndeclaredIdentifier):
        session.suitable('nope')


def test_session_module_over_quotient() -> None:
    session = Session.from_text("ring S = GF(5)[x, y]\nquotient R = S / (x*y)\nmodule M = coker [[x]]")
    module, context = session.module('M')
    assert context.name == 'R'
    # S/(x) tensored with S/(xy) is S/(x)
    assert module.annihilator() == Ideal(session.ring, [session.ring.gen('x')])
    with pytest.raises(UndeclaredIdentifier):
        Session().ring
