from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracreduce.errors import EquationSyntaxError, MultipleUnknowns, NegativeOrder, UnboundSymbol
from fracreduce.eqparser import (
    TVar,
    Call,
    LhsTerm,
    Num,
    Sym,
    add,
    ast_to_text,
    bind,
    expr_to_text,
    format_operator,
    mul,
    neg,
    parse,
    parse_expression,
    parse_exppoly,
    power,
    to_text,
    tokenize,
)
from fracreduce.exact import ExactComplex
from fracreduce.exppoly import ExpPoly
from fracreduce.operators import FracOperator, GridFunction
from fracreduce.pipeline import Equation

SEC52 = "I^{1} x + 5 I^{3/4} x + 2 I^{1/2} x - 20 I^{1/4} x - 24 x = exp(t)"


def test_golden_equation():
    ast = parse(SEC52)
    assert ast.unknown == "x"
    assert [(t.coeff, t.order) for t in ast.lhs_terms] == [
        (1, F(1)), (5, F(3, 4)), (2, F(1, 2)), (-20, F(1, 4)), (-24, F(0))]
    assert ast.base == 0 and ast.interval == (0, 1)
    assert parse_exppoly("exp(t)") == ExpPoly.exp(1)
    eq = bind(ast)
    assert isinstance(eq, Equation)
    assert eq.rhs == ExpPoly.exp(1)


def test_directives_and_defaults():
    ast = parse("@base 2\nx + I^{1/2} x = t")
    assert ast.base == 2 and ast.interval == (2, 3)
    ast = parse("@interval [-1, 1.5]\nx = 1")
    assert ast.base == -1 and ast.interval == (-1, F(3, 2))
    ast = parse("x = 1 @base 0 # trailing comment")
    assert ast.base == 0
    with pytest.raises(EquationSyntaxError):
        parse("@base 1 @interval [0, 1] x = 1")


def test_rhs_terms_in_unknown_move_left():
    ast = parse("x = 1 - I^{1/2} x")
    assert {t.order: t.coeff for t in ast.lhs_terms} == {F(0): 1, F(1, 2): 1}


def test_unknown_with_argument_and_coefficients():
    ast = parse("3/2 I^{2/3} u(t) - (1 + 2 i) u = sin(2 t)")
    assert ast.unknown == "u"
    assert ast.lhs_terms == (LhsTerm(F(3, 2), F(2, 3), "u"),
                             LhsTerm(ExactComplex(-1, -2), F(0), "u"))


def test_decimals_are_exact():
    ast = parse("0.25 x = 0.1 t")
    assert ast.lhs_terms[0].coeff == F(1, 4)
    assert parse_exppoly("0.1 t") == ExpPoly.monomial(1, 0, F(1, 10))


def test_trig_and_hyperbolic_forcing():
    t = np.linspace(0, 1, 5)
    for text, ref in [("sin(2 t)", np.sin(2 * t)), ("cos(t)", np.cos(t)),
                      ("sinh(t/2)", np.sinh(t / 2)), ("cosh(3 t)", np.cosh(3 * t)),
                      ("exp(1 + t)", np.exp(1 + t)), ("(1 + t)^2 exp(-t)", (1 + t) ** 2 * np.exp(-t))]:
        assert np.allclose(parse_exppoly(text)(t), ref, atol=1e-14)
    with pytest.raises(ValueError):
        parse_exppoly("exp(t^2)")


def test_error_position_and_expected():
    with pytest.raises(EquationSyntaxError) as info:
        parse("x + I^{1/2} = 1")
    err = info.value
    assert (err.line, err.column) == (1, 13)
    assert err.expected
    assert isinstance(err, SyntaxError)
    with pytest.raises(EquationSyntaxError) as info:
        parse("x +\n  * 2 = 1")
    assert info.value.line == 2 and info.value.expected


@pytest.mark.parametrize("text", ["x = ", "x == 1", "I^1/2 x = 1", "x = 1 / t", "x = $", "x = 1 = 2",
                                  "@interval [1] x = 1", "x = 1 / 0", "= 1", "1 = 1"])
def test_syntax_errors(text):
    with pytest.raises(EquationSyntaxError) as info:
        parse(text)
    assert info.value.expected


def test_negative_order():
    with pytest.raises(NegativeOrder):
        parse("I^{-1/2} x = 1")


def test_multiple_unknowns():
    with pytest.raises(MultipleUnknowns):
        parse("x + I^{1/2} y = 1")


def test_unbound_and_bound_symbols():
    ast = parse("x + I^{1} x = 2 w + t")
    assert ast.symbols() == {"w"}
    with pytest.raises(UnboundSymbol):
        bind(ast)
    w = GridFunction.from_function(np.exp, 0.0, 1.0, 8)
    eq = bind(ast, {"w": w})
    assert isinstance(eq.rhs, GridFunction)
    assert np.allclose(eq.rhs.values, 2 * np.exp(w.t) + w.t)


def test_bound_grid_must_match_interval():
    ast = parse("@interval [0, 2] x = w")
    with pytest.raises(ValueError):
        bind(ast, {"w": GridFunction.from_function(np.exp, 0.0, 1.0, 8)})


def test_format_operator():
    assert format_operator(FracOperator.identity()) == "x"
    assert format_operator(FracOperator(0.0, ())) == "0"
    T = FracOperator(0.0, ((1, F(2)), (-5, F(7, 4)), (F(1, 3), F(0))))
    assert format_operator(T) == "I^{2} x - 5 I^{7/4} x + 1/3 x"
    assert format_operator(T, "y") == "I^{2} y - 5 I^{7/4} y + 1/3 y"
    assert parse(format_operator(T) + " = 0").lhs_terms[1] == LhsTerm(-5, F(7, 4), "x")


def test_canonical_text():
    ast = parse(SEC52)
    text = ast_to_text(ast)
    assert text == ("@base 0\n@interval [0, 1]\n"
                    "I^{1} x + 5 I^{3/4} x + 2 I^{1/2} x - 20 I^{1/4} x - 24 x = exp(t)")
    assert parse(text) == ast
    assert to_text(ast) == text
    assert to_text(ExpPoly.exp(1)) == "exp(t)"


def test_smart_constructors():
    assert add(Num(F(1)), Num(F(-1))) == Num(F(0))
    assert add(TVar(), Num(F(0))) == TVar()
    assert mul(Num(F(2)), TVar(), Num(F(3))) == mul(Num(F(6)), TVar())
    assert neg(neg(TVar())) == TVar()
    assert power(TVar(), 1) == TVar() and power(TVar(), 0) == Num(F(1))


def test_tokenizer_positions():
    toks = tokenize("x +\n 2.5 t")
    assert [(t.kind, t.text, t.line, t.col) for t in toks[:4]] == [
        ("IDENT", "x", 1, 1), ("SYM", "+", 1, 3), ("NUMBER", "2.5", 2, 2), ("IDENT", "t", 2, 6)]


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(lambda c: c != 0)
orders = st.integers(1, 12).flatmap(lambda d: st.integers(0, 3 * d).map(lambda k: F(k, d)))

leaves = st.one_of(
    st.fractions(min_value=-9, max_value=9, max_denominator=5).map(Num),
    st.just(TVar()),
    st.sampled_from(["w", "g2"]).map(Sym),
)


def _extend(children):
    return st.one_of(
        st.lists(children, min_size=2, max_size=3).map(lambda xs: add(*xs)),
        st.lists(children, min_size=2, max_size=3).map(lambda xs: mul(*xs)),
        children.map(neg),
        st.tuples(children, st.integers(2, 3)).map(lambda p: power(*p)),
        st.tuples(st.sampled_from(["exp", "sin", "cos", "sinh", "cosh"]), children)
          .map(lambda p: Call(*p)),
    )


exprs = st.recursive(leaves, _extend, max_leaves=8)


@settings(max_examples=150, deadline=None)
@given(exprs)
def test_expression_round_trip(e):
    assert parse_expression(expr_to_text(e)) == e


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(orders, coeffs, min_size=1, max_size=8), exprs,
       st.fractions(min_value=-3, max_value=3, max_denominator=4), st.integers(1, 5))
def test_equation_round_trip(terms, rhs, base, width):
    text = " + ".join(f"({c}) I^{{{r}}} x" for r, c in terms.items())
    text = f"@interval [{base}, {base + width}]\n{text} = {expr_to_text(rhs)}"
    ast = parse(text)
    printed = ast_to_text(ast)
    again = parse(printed)
    assert again == ast
    assert ast_to_text(again) == printed
    assert {t.order: t.coeff for t in ast.lhs_terms} == terms
