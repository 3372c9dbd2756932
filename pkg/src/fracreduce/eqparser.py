"""Equation DSL: parsing, binding and canonical printing.

Example::

    @base 0
    @interval [0, 1]
    I^{1} x + 5 I^{3/4} x + 2 I^{1/2} x - 20 I^{1/4} x - 24 x = exp(t)

Grammar (whitespace and newlines are insignificant)::

    document  := (directive | equation)*          exactly one equation
    directive := "@base" signed | "@interval" "[" signed "," signed "]"
    equation  := expr "=" expr
    expr      := term (("+" | "-") term)*
    term      := unary (("*" | "/" | <juxtaposition>) unary)*
    unary     := "-" unary | "+" unary | power
    power     := primary ("^" (INT | "{" INT "}"))?
    primary   := NUMBER | "i" | "t" | func "(" expr ")" | "(" expr ")"
               | "I" "^" "{" rational "}" unknown | IDENT ["(" "t" ")"]
    func      := "exp" | "sin" | "cos" | "sinh" | "cosh"

Orders of ``I`` must be brace-delimited.  Decimal literals are read as
exact rationals.  The left side must be a sum of ``[coeff] I^{r} x`` terms
in a single unknown; right-side terms in the unknown are moved to the left.
Any other identifier on the right is a data symbol that has to be bound
(for example to a CSV grid) before the equation can be solved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .errors import EquationSyntaxError, MultipleUnknowns, NegativeOrder, UnboundSymbol
from .exact import ExactComplex, format_rational, format_scalar, is_exact, normalize
from .exppoly import ExpPoly, format_exppoly
from .genpoly import GenPoly, format_genpoly
from .operators import FracOperator, GridFunction

FUNCTIONS = ("exp", "sin", "cos", "sinh", "cosh")
RESERVED = frozenset(FUNCTIONS + ("I", "t", "i"))


# ---------------------------------------------------------------------------
# expression tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: object  # exact scalar


@dataclass(frozen=True)
class TVar:
    pass


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Op:
    """``I^{order} name`` (order 0 is never produced by the parser)."""

    order: Fraction
    name: str


@dataclass(frozen=True)
class Add:
    items: tuple


@dataclass(frozen=True)
class Mul:
    items: tuple  # a numeric coefficient, if any, comes first


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: object


ZERO = Num(Fraction(0))
ONE = Num(Fraction(1))


def add(*items):
    flat = []
    for it in items:
        flat.extend(it.items if isinstance(it, Add) else (it,))
    const = Fraction(0)
    rest = []
    for it in flat:
        if isinstance(it, Num):
            const = const + it.value
        else:
            rest.append(it)
    const = normalize(const)
    if const != 0 or not rest:
        rest.append(Num(const))
    return rest[0] if len(rest) == 1 else Add(tuple(rest))


def mul(*items):
    flat = []
    for it in items:
        flat.extend(it.items if isinstance(it, Mul) else (it,))
    coef = Fraction(1)
    rest = []
    for it in flat:
        if isinstance(it, Num):
            coef = coef * it.value
        else:
            rest.append(it)
    coef = normalize(coef)
    if not rest:
        return Num(coef)
    if coef != 1:
        rest.insert(0, Num(coef))
    return rest[0] if len(rest) == 1 else Mul(tuple(rest))


def neg(x):
    return mul(Num(Fraction(-1)), x)


def power(base, k: int):
    if k == 0:
        return ONE
    if k == 1:
        return base
    if isinstance(base, Num):
        return Num(normalize(base.value ** k))
    return Pow(base, k)


# ---------------------------------------------------------------------------
# equation AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LhsTerm:
    coeff: object  # exact scalar
    order: Fraction
    unknown: str


@dataclass(frozen=True)
class EquationAst:
    lhs_terms: tuple
    rhs: object
    base: Fraction = Fraction(0)
    interval: tuple = (Fraction(0), Fraction(1))

    @property
    def unknown(self) -> str:
        return self.lhs_terms[0].unknown

    def symbols(self) -> set:
        return _symbols(self.rhs)


def _symbols(e) -> set:
    if isinstance(e, Sym):
        return {e.name}
    if isinstance(e, (Add, Mul)):
        out = set()
        for it in e.items:
            out |= _symbols(it)
        return out
    if isinstance(e, Pow):
        return _symbols(e.base)
    if isinstance(e, Call):
        return _symbols(e.arg)
    return set()


def _contains_unknown(e, names) -> bool:
    if isinstance(e, Op):
        return True
    if isinstance(e, Sym):
        return e.name in names
    if isinstance(e, (Add, Mul)):
        return any(_contains_unknown(it, names) for it in e.items)
    if isinstance(e, Pow):
        return _contains_unknown(e.base, names)
    if isinstance(e, Call):
        return _contains_unknown(e.arg, names)
    return False


def _op_names(e) -> set:
    if isinstance(e, Op):
        return {e.name}
    if isinstance(e, (Add, Mul)):
        out = set()
        for it in e.items:
            out |= _op_names(it)
        return out
    if isinstance(e, Pow):
        return _op_names(e.base)
    if isinstance(e, Call):
        return _op_names(e.arg)
    return set()


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, IDENT, SYM, DIRECTIVE, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>[0-9]+(?:\.[0-9]+)?)
  | (?P<directive>@[A-Za-z_]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[-+*/^(){}\[\],=])
""", re.VERBOSE)


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise EquationSyntaxError(f"unexpected character {text[pos]!r}", line, col,
                                      ("number", "identifier", "operator"))
        kind = m.lastgroup
        value = m.group()
        if kind == "number":
            tokens.append(Token("NUMBER", value, line, col))
        elif kind == "directive":
            tokens.append(Token("DIRECTIVE", value, line, col))
        elif kind == "ident":
            tokens.append(Token("IDENT", value, line, col))
        elif kind == "sym":
            tokens.append(Token("SYM", value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    col = pos - line_start + 1
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_PRIMARY_START = ("number", "identifier", "t", "i", "(", "I", "-") + FUNCTIONS


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.base: Optional[Fraction] = None
        self.interval: Optional[tuple] = None
        self.base_tok: Optional[Token] = None

    # token helpers --------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("SYM", "IDENT") and self.tok.text == text

    def error(self, message: str, expected) -> EquationSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        return EquationSyntaxError(f"{message} (found {found})", t.line, t.col, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}", (text,))
        return self.advance()

    # document -------------------------------------------------------------
    def document(self) -> EquationAst:
        self.directives()
        lhs = self.expr()
        self.directives()
        self.expect("=")
        self.directives()
        rhs = self.expr()
        self.directives()
        if self.tok.kind != "EOF":
            raise self.error("unexpected token after equation", ("+", "-", "@base", "@interval", "end of input"))
        return self.build(lhs, rhs)

    def directives(self):
        while self.tok.kind == "DIRECTIVE":
            t = self.advance()
            if t.text == "@base":
                if self.base is not None:
                    raise EquationSyntaxError("duplicate @base", t.line, t.col, ("=",))
                self.base = self.signed()
                self.base_tok = t
            elif t.text == "@interval":
                if self.interval is not None:
                    raise EquationSyntaxError("duplicate @interval", t.line, t.col, ("=",))
                self.expect("[")
                a = self.signed()
                self.expect(",")
                b = self.signed()
                self.expect("]")
                if not b > a:
                    raise EquationSyntaxError("interval needs b > a", t.line, t.col, ("[a, b] with b > a",))
                self.interval = (a, b)
            else:
                raise EquationSyntaxError(f"unknown directive {t.text}", t.line, t.col,
                                          ("@base", "@interval"))

    def signed(self) -> Fraction:
        sign = 1
        while self.at("-") or self.at("+"):
            if self.advance().text == "-":
                sign = -sign
        value = self.rational()
        return sign * value

    def rational(self) -> Fraction:
        if self.tok.kind != "NUMBER":
            raise self.error("expected a number", ("number",))
        value = Fraction(self.advance().text)
        if self.at("/"):
            self.advance()
            if self.tok.kind != "NUMBER":
                raise self.error("expected a denominator", ("number",))
            den = Fraction(self.advance().text)
            if den == 0:
                raise self.error("zero denominator", ("nonzero number",))
            value = value / den
        return value

    # expressions ----------------------------------------------------------
    def expr(self):
        items = [self.term()]
        while self.at("+") or self.at("-"):
            op = self.advance().text
            t = self.term()
            items.append(t if op == "+" else neg(t))
        return add(*items)

    def _starts_primary(self) -> bool:
        t = self.tok
        return t.kind in ("NUMBER", "IDENT") or (t.kind == "SYM" and t.text == "(")

    def term(self):
        value = self.unary()
        while True:
            if self.at("*"):
                self.advance()
                value = mul(value, self.unary())
            elif self.at("/"):
                t = self.advance()
                den = self.unary()
                if not isinstance(den, Num) or den.value == 0:
                    raise EquationSyntaxError("division is only allowed by a nonzero constant",
                                              t.line, t.col, ("number",))
                value = mul(value, Num(normalize(Fraction(1) / den.value)))
            elif self._starts_primary():
                value = mul(value, self.power())
            else:
                return value

    def unary(self):
        if self.at("-"):
            self.advance()
            return neg(self.unary())
        if self.at("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.at("^"):
            self.advance()
            braced = self.at("{")
            if braced:
                self.advance()
            if self.tok.kind != "NUMBER" or "." in self.tok.text:
                raise self.error("expected a nonnegative integer exponent", ("integer",))
            k = int(self.advance().text)
            if braced:
                self.expect("}")
            return power(base, k)
        return base

    def primary(self):
        t = self.tok
        if t.kind == "NUMBER":
            self.advance()
            return Num(normalize(Fraction(t.text)))
        if t.kind == "SYM" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "IDENT":
            name = t.text
            if name == "t":
                self.advance()
                return TVar()
            if name == "i":
                self.advance()
                return Num(ExactComplex(0, 1))
            if name in FUNCTIONS:
                self.advance()
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            if name == "I":
                return self.operator_term()
            self.advance()
            self.optional_of_t()
            return Sym(name)
        raise self.error("expected an expression", _PRIMARY_START)

    def optional_of_t(self):
        toks = self.tokens[self.pos: self.pos + 3]
        if (len(toks) == 3 and toks[0].text == "(" and toks[1].text == "t"
                and toks[2].text == ")"):
            self.pos += 3

    def operator_term(self):
        self.expect("I")
        self.expect("^")
        if not self.at("{"):
            raise self.error("order of I must be written in braces, e.g. I^{3/4}", ("{",))
        self.advance()
        if self.at("-"):
            t = self.tok
            raise NegativeOrder(f"negative order at line {t.line}, column {t.col}")
        if self.at("+"):
            self.advance()
        order = self.rational()
        self.expect("}")
        t = self.tok
        if t.kind != "IDENT" or t.text in RESERVED:
            raise self.error("expected the unknown function after I^{...}", ("identifier",))
        self.advance()
        self.optional_of_t()
        if order == 0:
            return Sym(t.text)
        return Op(order, t.text)

    # semantic assembly ----------------------------------------------------
    def build(self, lhs, rhs) -> EquationAst:
        names = _op_names(lhs) | _op_names(rhs)
        for item in _items(lhs):
            if isinstance(item, Sym):
                names.add(item.name)
            elif isinstance(item, Mul) and isinstance(item.items[-1], Sym) and len(item.items) == 2:
                names.add(item.items[-1].name)
        if len(names) > 1:
            raise MultipleUnknowns(f"more than one unknown: {', '.join(sorted(names))}")
        if not names:
            t = self.tokens[0]
            raise EquationSyntaxError("the left side has no unknown", t.line, t.col,
                                      ("I^{r} x", "identifier"))
        (unknown,) = names
        terms = [self.lhs_term(item, unknown, 1) for item in _items(lhs)]
        rhs_rest = []
        for item in _items(rhs):
            if _contains_unknown(item, {unknown}):
                terms.append(self.lhs_term(item, unknown, -1))
            else:
                rhs_rest.append(item)
        base, interval = self.resolve_domain()
        return EquationAst(tuple(terms), add(*rhs_rest) if rhs_rest else ZERO, base, interval)

    def lhs_term(self, item, unknown: str, sign: int) -> LhsTerm:
        coeff = Fraction(1)
        core = item
        if isinstance(item, Mul) and len(item.items) == 2 and isinstance(item.items[0], Num):
            coeff, core = item.items[0].value, item.items[1]
        if isinstance(core, Op) and core.name == unknown:
            return LhsTerm(normalize(coeff * sign), core.order, unknown)
        if isinstance(core, Sym) and core.name == unknown:
            return LhsTerm(normalize(coeff * sign), Fraction(0), unknown)
        t = self.tokens[0]
        raise EquationSyntaxError("terms in the unknown must have the form c I^{r} x",
                                  t.line, t.col, ("c I^{r} x",))

    def resolve_domain(self):
        base, interval = self.base, self.interval
        if base is None and interval is None:
            return Fraction(0), (Fraction(0), Fraction(1))
        if interval is None:
            return base, (base, base + 1)
        if base is None:
            return interval[0], interval
        if base != interval[0]:
            t = self.base_tok
            raise EquationSyntaxError("@base must equal the start of @interval", t.line, t.col,
                                      (f"@base {format_rational(interval[0])}",))
        return base, interval


def _items(e) -> tuple:
    if isinstance(e, Add):
        return e.items
    if isinstance(e, Num) and e.value == 0:
        return ()
    return (e,)


def parse(text: str) -> EquationAst:
    """Parse DSL text into an :class:`EquationAst`."""
    return _Parser(text).document()


def parse_expression(text: str):
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "EOF":
        raise p.error("unexpected token after expression", ("+", "-", "end of input"))
    return e


def parse_exppoly(text: str) -> ExpPoly:
    return to_exppoly(parse_expression(text))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def to_exppoly(e) -> ExpPoly:
    """Evaluate a right-hand-side expression as an exponential polynomial."""
    if isinstance(e, Num):
        return ExpPoly.constant(e.value)
    if isinstance(e, TVar):
        return ExpPoly.monomial(1)
    if isinstance(e, (Sym, Op)):
        name = e.name
        raise UnboundSymbol(f"symbol {name!r} is not bound to data")
    if isinstance(e, Add):
        out = ExpPoly.zero()
        for it in e.items:
            out = out + to_exppoly(it)
        return out
    if isinstance(e, Mul):
        out = ExpPoly.constant(Fraction(1))
        for it in e.items:
            out = out * to_exppoly(it)
        return out
    if isinstance(e, Pow):
        return to_exppoly(e.base) ** e.exponent
    if isinstance(e, Call):
        c0, c1 = _affine(to_exppoly(e.arg), e)
        I = ExactComplex(0, 1)
        if e.name == "exp":
            return _exp_affine(c0, c1)
        if e.name == "sin":
            return (_exp_affine(I * c0, I * c1) - _exp_affine(-I * c0, -I * c1)) * ExactComplex(0, Fraction(-1, 2))
        if e.name == "cos":
            return (_exp_affine(I * c0, I * c1) + _exp_affine(-I * c0, -I * c1)) * Fraction(1, 2)
        if e.name == "sinh":
            return (_exp_affine(c0, c1) - _exp_affine(-c0, -c1)) * Fraction(1, 2)
        if e.name == "cosh":
            return (_exp_affine(c0, c1) + _exp_affine(-c0, -c1)) * Fraction(1, 2)
    raise TypeError(f"cannot evaluate {e!r}")


def _affine(arg: ExpPoly, e):
    if arg.is_zero():
        return Fraction(0), Fraction(0)
    if len(arg.terms) != 1 or arg.terms[0][0] != 0 or len(arg.terms[0][1]) > 2:
        raise ValueError(f"argument of {e.name} must be affine in t")
    p = arg.terms[0][1]
    return p[0], (p[1] if len(p) > 1 else Fraction(0))


def _exp_affine(c0, c1) -> ExpPoly:
    if c0 == 0:
        return ExpPoly.exp(normalize(c1) if is_exact(c1) else c1)
    factor = np.exp(complex(c0))
    return ExpPoly.exp(complex(c1), factor)


def evaluate_on_grid(e, t: np.ndarray, bindings: Mapping) -> np.ndarray:
    """Pointwise numeric value of an expression; symbols come from ``bindings``."""
    if isinstance(e, Num):
        return np.full(t.shape, complex(e.value))
    if isinstance(e, TVar):
        return t.astype(complex)
    if isinstance(e, Sym):
        if e.name not in bindings:
            raise UnboundSymbol(f"symbol {e.name!r} is not bound to data")
        return np.asarray(bindings[e.name], dtype=complex)
    if isinstance(e, Add):
        return sum((evaluate_on_grid(it, t, bindings) for it in e.items), np.zeros(t.shape, complex))
    if isinstance(e, Mul):
        out = np.ones(t.shape, complex)
        for it in e.items:
            out = out * evaluate_on_grid(it, t, bindings)
        return out
    if isinstance(e, Pow):
        return evaluate_on_grid(e.base, t, bindings) ** e.exponent
    if isinstance(e, Call):
        return getattr(np, e.name)(evaluate_on_grid(e.arg, t, bindings))
    raise UnboundSymbol(f"operator term {e!r} cannot appear in the data")


def bind(ast: EquationAst, bindings: Optional[Mapping] = None):
    """Semantic pass: build a solvable equation from the AST.

    ``bindings`` maps data symbols to :class:`GridFunction` samples.  Without
    data symbols the right-hand side becomes an :class:`ExpPoly`.
    """
    from .pipeline import Equation

    bindings = dict(bindings or {})
    base = float(ast.base)
    a, b = (float(v) for v in ast.interval)
    T = FracOperator(base, tuple((term.coeff, term.order) for term in ast.lhs_terms))
    symbols = ast.symbols()
    missing = symbols - set(bindings)
    if missing:
        raise UnboundSymbol(f"unbound symbol(s): {', '.join(sorted(missing))}; "
                            f"bind them to data, e.g. with --rhs-csv")
    if not symbols:
        return Equation(T, to_exppoly(ast.rhs), (a, b))
    grids = [bindings[s] for s in sorted(symbols)]
    g0 = grids[0]
    for g in grids[1:]:
        if not g0.same_grid(g):
            raise ValueError("bound data symbols live on different grids")
    if ast_interval_given(ast) and not (np.isclose(g0.a, a) and np.isclose(g0.b, b)):
        raise ValueError(f"data grid [{g0.a}, {g0.b}] does not match the interval [{a}, {b}]")
    vals = evaluate_on_grid(ast.rhs, g0.t, {s: bindings[s].values for s in symbols})
    if all(not np.iscomplexobj(g.values) for g in grids) and np.all(vals.imag == 0):
        vals = vals.real
    rhs = GridFunction(g0.a, g0.b, g0.n, vals)
    T = FracOperator(g0.a, T.terms)
    return Equation(T, rhs, (g0.a, g0.b))


def ast_interval_given(ast: EquationAst) -> bool:
    return not (ast.base == 0 and ast.interval == (Fraction(0), Fraction(1)))


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _is_negative_real(v) -> bool:
    if is_exact(v):
        v = normalize(v)
        return isinstance(v, Fraction) and v < 0
    c = complex(v)
    return c.imag == 0 and c.real < 0


def _num_text(v) -> str:
    if is_exact(v):
        v = normalize(v)
        if isinstance(v, Fraction):
            return format_rational(v)
    return format_scalar(v)


def _signed_parts(e):
    """Split a summand into (negative?, magnitude expression)."""
    if isinstance(e, Num) and _is_negative_real(e.value):
        return True, Num(-e.value)
    if isinstance(e, Mul) and isinstance(e.items[0], Num) and _is_negative_real(e.items[0].value):
        return True, mul(Num(-e.items[0].value), *e.items[1:]) if e.items[0].value != -1 \
            else (e.items[1] if len(e.items) == 2 else Mul(e.items[1:]))
    return False, e


def expr_to_text(e) -> str:
    if isinstance(e, Num):
        return _num_text(e.value)
    if isinstance(e, TVar):
        return "t"
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Op):
        return f"I^{{{format_rational(e.order)}}} {e.name}"
    if isinstance(e, Add):
        out = ""
        for k, it in enumerate(e.items):
            negative, mag = _signed_parts(it)
            body = expr_to_text(mag)
            if k == 0:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out
    if isinstance(e, Mul):
        parts = []
        for k, it in enumerate(e.items):
            if isinstance(it, Num) and k == 0 and it.value == -1:
                parts.append("-")
                continue
            txt = expr_to_text(it)
            if isinstance(it, Add) or (isinstance(it, Num) and k > 0):
                txt = f"({txt})"
            parts.append(txt)
        if parts[0] == "-":
            return "-" + " ".join(parts[1:])
        return " ".join(parts)
    if isinstance(e, Pow):
        inner = expr_to_text(e.base)
        if isinstance(e.base, (Add, Mul, Num, Pow, Op)):
            inner = f"({inner})"
        return f"{inner}^{e.exponent}"
    if isinstance(e, Call):
        return f"{e.name}({expr_to_text(e.arg)})"
    raise TypeError(f"cannot print {e!r}")


def _term_texts(terms, var: str) -> list:
    """(negative?, text) for ``coeff I^{order} var`` terms."""
    out = []
    for c, r in terms:
        negative = _is_negative_real(c)
        mag = -c if negative else c
        op = var if r == 0 else f"I^{{{format_rational(r)}}} {var}"
        if mag == 1:
            txt = op
        else:
            txt = f"{_num_text(mag)} {op}"
        out.append((negative, txt))
    return out


def _join(parts: list) -> str:
    if not parts:
        return "0"
    neg0, first = parts[0]
    out = ("-" if neg0 else "") + first
    for negative, txt in parts[1:]:
        out += (" - " if negative else " + ") + txt
    return out


def format_operator(T: FracOperator, var: str = "x") -> str:
    """``I^{2} x - 5 I^{7/4} x + ... + 864 x``; the identity prints as ``x``."""
    return _join(_term_texts(T.terms, var))


def ast_to_text(ast: EquationAst) -> str:
    lhs = _join(_term_texts([(t.coeff, t.order) for t in ast.lhs_terms], ast.unknown))
    a, b = ast.interval
    return (f"@base {format_rational(ast.base)}\n"
            f"@interval [{format_rational(a)}, {format_rational(b)}]\n"
            f"{lhs} = {expr_to_text(ast.rhs)}")


def to_text(obj) -> str:
    """Canonical text for any printable domain object."""
    if isinstance(obj, EquationAst):
        return ast_to_text(obj)
    if isinstance(obj, FracOperator):
        return format_operator(obj)
    if isinstance(obj, GenPoly):
        return format_genpoly(obj)
    if isinstance(obj, ExpPoly):
        return format_exppoly(obj)
    if isinstance(obj, (Num, TVar, Sym, Op, Add, Mul, Pow, Call)):
        return expr_to_text(obj)
    raise TypeError(f"no text form for {type(obj).__name__}")
