"""Small arithmetic expression language for defining f on the command line.

Grammar (whitespace-insensitive, no implicit multiplication):

    expr  := term  (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?          # right-associative
    atom  := NUMBER | 'x' | 'pi' | 'e'
           | FUNC '(' expr ')' | ('min'|'max') '(' expr ',' expr ')'
           | '(' expr ')'

"-x^2" reads as -(x^2).
"""

import math
import re
from dataclasses import dataclass
from typing import Tuple, Union

from .errors import NonFiniteError, ParseError

Expr = Union["Num", "Var", "Const", "Neg", "Bin", "Call"]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    name: str  # "pi" or "e"


@dataclass(frozen=True)
class Neg:
    operand: Expr


@dataclass(frozen=True)
class Bin:
    op: str  # + - * / ^
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple[Expr, ...]


UNARY_FUNCS = ("sin", "cos", "tan", "exp", "log", "sqrt", "abs")
BINARY_FUNCS = ("min", "max")
CONSTANTS = {"pi": math.pi, "e": math.e}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            # skip pure whitespace tail
            if text[pos:].strip() == "":
                break
            off = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(off, "a number, name, or operator")
        start = m.start("num") if m.group("num") else (
            m.start("ident") if m.group("ident") else m.start("op")
        )
        if m.group("num"):
            tokens.append(("num", m.group("num"), start))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident"), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise ParseError(off, f"'{op}'")
        self.advance()

    def parse(self):
        e = self.expr()
        kind, _, off = self.peek()
        if kind != "end":
            raise ParseError(off, "an operator or end of input")
        return e

    def expr(self):
        left = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                left = Bin(val, left, self.term())
            else:
                return left

    def term(self):
        left = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                left = Bin(val, left, self.unary())
            else:
                return left

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            return Bin("^", base, self.unary())
        return base

    def atom(self):
        kind, val, off = self.advance()
        if kind == "num":
            return Num(float(val))
        if kind == "ident":
            if val == "x":
                return Var()
            if val in CONSTANTS:
                return Const(val)
            if val in UNARY_FUNCS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(val, (arg,))
            if val in BINARY_FUNCS:
                self.expect_op("(")
                a = self.expr()
                self.expect_op(",")
                b = self.expr()
                self.expect_op(")")
                return Call(val, (a, b))
            raise ParseError(off, "a known function, 'x', 'pi', or 'e'")
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(off, "a number, name, unary '-', or '('")


def parse(text):
    """Parse an expression string into an AST."""
    return _Parser(text).parse()


_UNARY_IMPL = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": abs,
}


def eval_expr(e, x):
    """Evaluate an AST at x; raises NonFiniteError instead of NaN/inf."""
    v = _eval(e, x)
    if not math.isfinite(v):
        raise NonFiniteError(f"expression is not finite at x={x}")
    return v


def _eval(e, x):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Neg):
        return -_eval(e.operand, x)
    if isinstance(e, Bin):
        a = _eval(e.left, x)
        b = _eval(e.right, x)
        try:
            if e.op == "+":
                v = a + b
            elif e.op == "-":
                v = a - b
            elif e.op == "*":
                v = a * b
            elif e.op == "/":
                v = a / b
            else:
                v = math.pow(a, b)
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            raise NonFiniteError(f"'{e.op}' undefined at x={x}: {exc}") from exc
        if not math.isfinite(v):
            raise NonFiniteError(f"'{e.op}' produced {v} at x={x}")
        return v
    if isinstance(e, Call):
        args = [_eval(a, x) for a in e.args]
        try:
            if e.name in _UNARY_IMPL:
                v = _UNARY_IMPL[e.name](args[0])
            elif e.name == "min":
                v = min(args)
            else:
                v = max(args)
        except (ValueError, OverflowError) as exc:
            raise NonFiniteError(f"{e.name} undefined at x={x}: {exc}") from exc
        if not math.isfinite(v):
            raise NonFiniteError(f"{e.name} produced {v} at x={x}")
        return v
    raise TypeError(f"not an expression node: {e!r}")


# printing precedence levels; a child below its slot's minimum gets parens
_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e):
    if isinstance(e, Bin):
        if e.op in "+-":
            return _PREC_ADD
        if e.op in "*/":
            return _PREC_MUL
        return _PREC_POW
    if isinstance(e, Neg):
        return _PREC_NEG
    return _PREC_ATOM


def _fmt(e, minimum):
    s = _to_string(e)
    return f"({s})" if _prec(e) < minimum else s


def _to_string(e):
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Neg):
        return "-" + _fmt(e.operand, _PREC_NEG)
    if isinstance(e, Bin):
        if e.op in "+-":
            return f"{_fmt(e.left, _PREC_ADD)} {e.op} {_fmt(e.right, _PREC_MUL)}"
        if e.op in "*/":
            return f"{_fmt(e.left, _PREC_MUL)}{e.op}{_fmt(e.right, _PREC_NEG)}"
        return f"{_fmt(e.left, _PREC_ATOM)}^{_fmt(e.right, _PREC_NEG)}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(_to_string(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


def to_string(e):
    """Render an AST so that parse(to_string(e)) == e."""
    return _to_string(e)


def compile_function(text):
    """Parse once and return a float-callable f(x)."""
    ast = parse(text)
    return lambda x: eval_expr(ast, float(x))
