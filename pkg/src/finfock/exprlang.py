"""Recursive-descent parsers for the species and operator languages.

Species grammar (whitespace separates tokens, otherwise ignored):

    species := sum
    sum     := prod { "+" prod }
    prod    := pow { "*" pow | pow }          juxtaposition multiplies
    pow     := atom [ "^" nat ]
    atom    := "0" | "1" | "X" | "E" | "E+" | "L" | "Par" | "B"
             | "D" "(" species ")"
             | ident | ident "(" species ")"   composition
             | "fix" ident "." species
             | "(" species ")"

Operator grammar:

    operator := osum
    osum     := oprod { "+" oprod }
    oprod    := oatom { oatom | "*" oatom }
    oatom    := "A*" | "A" | "Phi" | ":Phi^" nat ":"
              | "adj" "(" operator ")" | nat | "(" operator ")"

The lexers use maximal munch: `A*` and `E+` are single tokens when the
star or plus immediately follows the letter, so "A* A" is a product of
the adjoint generator with A, while "A * A" multiplies A by itself, and
a sum with E on the left needs the space in "E + E".  Both grammars are
LL(1) after that rule.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import fock, species

EMPTY_INPUT = "EmptyInput"
UNEXPECTED_TOKEN = "UnexpectedToken"
UNBALANCED_PAREN = "UnbalancedParen"
UNKNOWN_NAME = "UnknownName"
BAD_NUMBER = "BadNumber"


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets [start, end) into the input string."""

    start: int
    end: int


class ParseError(Exception):
    def __init__(self, kind: str, message: str, span: SourceSpan):
        self.kind = kind
        self.message = message
        self.span = span
        super().__init__("%s at %d..%d: %s" % (kind, span.start, span.end, message))


_SPECIES_BUILTINS = {
    "X": species.X,
    "E": species.E,
    "E+": species.E_PLUS,
    "L": species.L,
    "Par": species.PAR,
    "B": species.B,
}

_RESERVED = {"fix", "D"} | set(_SPECIES_BUILTINS)

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_DIGITS = re.compile(r"[0-9]+")
_WICK = re.compile(r":Phi\^([0-9]+):")
_WICK_PREFIX = re.compile(r":Phi\^")


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME | NAT | WICK | one of + * ^ . ( ) | EOF
    text: str
    start: int
    end: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.start, self.end)


def _lex(src: str, *, operators: bool) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(src)
    while pos < n:
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "+*^.()":
            tokens.append(_Token(ch, ch, pos, pos + 1))
            pos += 1
            continue
        if ch == ":" and operators:
            m = _WICK.match(src, pos)
            if m:
                tokens.append(_Token("WICK", m.group(1), pos, m.end()))
                pos = m.end()
                continue
            p = _WICK_PREFIX.match(src, pos)
            if p:
                raise ParseError(
                    BAD_NUMBER,
                    "expected a number and ':' after ':Phi^'",
                    SourceSpan(p.end(), min(p.end() + 1, n)),
                )
            raise ParseError(
                UNEXPECTED_TOKEN,
                "unexpected %r" % ch,
                SourceSpan(pos, pos + 1),
            )
        m = _DIGITS.match(src, pos)
        if m:
            end = m.end()
            if end < n and (src[end].isalpha() or src[end] == "_"):
                stop = end
                while stop < n and (src[stop].isalnum() or src[stop] == "_"):
                    stop += 1
                raise ParseError(
                    BAD_NUMBER,
                    "malformed number %r" % src[pos:stop],
                    SourceSpan(pos, stop),
                )
            tokens.append(_Token("NAT", m.group(0), pos, end))
            pos = end
            continue
        m = _IDENT.match(src, pos)
        if m:
            name = m.group(0)
            end = m.end()
            if operators and name == "A" and end < n and src[end] == "*":
                tokens.append(_Token("NAME", "A*", pos, end + 1))
                pos = end + 1
                continue
            if not operators and name == "E" and end < n and src[end] == "+":
                tokens.append(_Token("NAME", "E+", pos, end + 1))
                pos = end + 1
                continue
            tokens.append(_Token("NAME", name, pos, end))
            pos = end
            continue
        raise ParseError(
            UNEXPECTED_TOKEN, "unexpected %r" % ch, SourceSpan(pos, pos + 1)
        )
    tokens.append(_Token("EOF", "", n, n))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0
        opens = sum(1 for t in tokens if t.kind == "(")
        closes = sum(1 for t in tokens if t.kind == ")")
        self.unbalanced = opens != closes

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "EOF":
            self.index += 1
        return tok

    def atom_error_kind(self, tok) -> str:
        if tok.kind == ")" or (tok.kind == "EOF" and self.unbalanced):
            return UNBALANCED_PAREN
        return UNEXPECTED_TOKEN

    def expect(self, kind, what) -> _Token:
        tok = self.current
        if tok.kind != kind:
            err_kind = UNBALANCED_PAREN if kind == ")" else UNEXPECTED_TOKEN
            if tok.kind == "EOF" and self.unbalanced:
                err_kind = UNBALANCED_PAREN
            raise ParseError(
                err_kind,
                "expected %s, found %s" % (what, tok.text or "end of input"),
                tok.span,
            )
        return self.advance()


_ATOM_STARTS = {"NAT", "NAME", "(", "WICK"}


def parse_species(src: str) -> species.SpeciesExpr:
    """Parse the species language; raises ParseError with a source span."""
    tokens = _lex(src, operators=False)
    if tokens[0].kind == "EOF":
        raise ParseError(EMPTY_INPUT, "empty input", SourceSpan(0, len(src)))
    cur = _Cursor(tokens)
    expr = _species_sum(cur, frozenset())
    tok = cur.current
    if tok.kind != "EOF":
        kind = UNBALANCED_PAREN if tok.kind == ")" else UNEXPECTED_TOKEN
        raise ParseError(kind, "unexpected %r after expression" % tok.text, tok.span)
    return expr


def _species_sum(cur, bound):
    expr = _species_prod(cur, bound)
    while cur.current.kind == "+":
        cur.advance()
        expr = species.Sum(expr, _species_prod(cur, bound))
    return expr


def _species_prod(cur, bound):
    expr = _species_pow(cur, bound)
    while True:
        tok = cur.current
        if tok.kind == "*":
            cur.advance()
            expr = species.Product(expr, _species_pow(cur, bound))
        elif tok.kind in ("NAT", "NAME", "("):
            expr = species.Product(expr, _species_pow(cur, bound))
        else:
            return expr


def _species_pow(cur, bound):
    expr = _species_atom(cur, bound)
    if cur.current.kind == "^":
        cur.advance()
        nat = cur.expect("NAT", "an exponent")
        expr = species.Power(expr, int(nat.text))
    return expr


def _species_atom(cur, bound):
    tok = cur.current
    if tok.kind == "NAT":
        cur.advance()
        value = int(tok.text)
        if value == 0:
            return species.ZERO
        if value == 1:
            return species.ONE
        raise ParseError(
            UNEXPECTED_TOKEN,
            "only 0 and 1 are species literals, got %s" % tok.text,
            tok.span,
        )
    if tok.kind == "(":
        cur.advance()
        inner = _species_sum(cur, bound)
        cur.expect(")", "')'")
        return inner
    if tok.kind == "NAME":
        cur.advance()
        name = tok.text
        if name == "fix":
            var = cur.expect("NAME", "a variable name after 'fix'")
            if var.text in _RESERVED:
                raise ParseError(
                    UNEXPECTED_TOKEN,
                    "%r is reserved and cannot be bound" % var.text,
                    var.span,
                )
            cur.expect(".", "'.' after the fix variable")
            body = _species_sum(cur, bound | {var.text})
            return species.Fix(var.text, body)
        if name == "D":
            cur.expect("(", "'(' after D")
            inner = _species_sum(cur, bound)
            cur.expect(")", "')'")
            return species.Derivative(inner)
        if name in _SPECIES_BUILTINS:
            head = _SPECIES_BUILTINS[name]
        elif name in bound:
            head = species.Var(name)
        else:
            raise ParseError(
                UNKNOWN_NAME, "unknown species name %r" % name, tok.span
            )
        if cur.current.kind == "(":
            cur.advance()
            inner = _species_sum(cur, bound)
            cur.expect(")", "')'")
            return species.Compose(head, inner)
        return head
    raise ParseError(
        cur.atom_error_kind(tok),
        "expected a species, found %s" % (tok.text or "end of input"),
        tok.span,
    )


def parse_operator(src: str) -> fock.OperatorExpr:
    """Parse the operator language; raises ParseError with a source span."""
    tokens = _lex(src, operators=True)
    if tokens[0].kind == "EOF":
        raise ParseError(EMPTY_INPUT, "empty input", SourceSpan(0, len(src)))
    cur = _Cursor(tokens)
    expr = _op_sum(cur)
    tok = cur.current
    if tok.kind != "EOF":
        kind = UNBALANCED_PAREN if tok.kind == ")" else UNEXPECTED_TOKEN
        raise ParseError(kind, "unexpected %r after expression" % tok.text, tok.span)
    return expr


def _op_sum(cur):
    expr = _op_prod(cur)
    while cur.current.kind == "+":
        cur.advance()
        expr = fock.OpSum(expr, _op_prod(cur))
    return expr


def _op_prod(cur):
    expr = _op_atom(cur)
    while True:
        tok = cur.current
        if tok.kind == "*":
            cur.advance()
            expr = fock.OpProduct(expr, _op_atom(cur))
        elif tok.kind in ("NAME", "NAT", "WICK", "("):
            expr = fock.OpProduct(expr, _op_atom(cur))
        else:
            return expr


def _op_atom(cur):
    tok = cur.current
    if tok.kind == "WICK":
        cur.advance()
        return fock.OpWick(int(tok.text))
    if tok.kind == "NAT":
        cur.advance()
        return fock.OpScalar(int(tok.text))
    if tok.kind == "(":
        cur.advance()
        inner = _op_sum(cur)
        cur.expect(")", "')'")
        return inner
    if tok.kind == "NAME":
        cur.advance()
        name = tok.text
        if name == "A":
            return fock.OpA()
        if name == "A*":
            return fock.OpAstar()
        if name == "Phi":
            return fock.OpPhi()
        if name == "adj":
            cur.expect("(", "'(' after adj")
            inner = _op_sum(cur)
            cur.expect(")", "')'")
            return fock.OpAdjoint(inner)
        raise ParseError(UNKNOWN_NAME, "unknown operator name %r" % name, tok.span)
    raise ParseError(
        cur.atom_error_kind(tok),
        "expected an operator, found %s" % (tok.text or "end of input"),
        tok.span,
    )


# ---------------------------------------------------------------------------
# Pretty-printing (round trips through the parsers)

_BASE_NAMES = {
    species.Zero: "0",
    species.One: "1",
    species.Singleton: "X",
    species.Sets: "E",
    species.NonemptySets: "E+",
    species.LinearOrders: "L",
    species.Partitions: "Par",
    species.BinaryTrees: "B",
}

_LVL_FIX, _LVL_SUM, _LVL_PROD, _LVL_POW, _LVL_ATOM = 0, 1, 2, 3, 4


def format_species(expr) -> str:
    """Concrete syntax that parses back to the same tree."""
    text, _ = _fmt_species(expr)
    return text


def _fmt_species(expr):
    kind = type(expr)
    if kind in _BASE_NAMES:
        return _BASE_NAMES[kind], _LVL_ATOM
    if kind is species.Var:
        return expr.name, _LVL_ATOM
    if kind is species.Derivative:
        return "D(%s)" % format_species(expr.inner), _LVL_ATOM
    if kind is species.Compose:
        # only a named head is grammatical: Name(inner)
        if type(expr.outer) in _BASE_NAMES:
            head = _BASE_NAMES[type(expr.outer)]
        elif type(expr.outer) is species.Var:
            head = expr.outer.name
        else:
            raise ValueError("composition head %r has no named syntax" % (expr.outer,))
        return "%s(%s)" % (head, format_species(expr.inner)), _LVL_ATOM
    if kind is species.Power:
        base, lvl = _fmt_species(expr.base)
        if lvl < _LVL_ATOM:
            base = "(%s)" % base
        return "%s^%d" % (base, expr.exponent), _LVL_POW
    if kind is species.Product:
        left = _fmt_at_least(expr.left, _LVL_PROD)
        right = _fmt_at_least(expr.right, _LVL_POW)
        return "%s * %s" % (left, right), _LVL_PROD
    if kind is species.Sum:
        left = _fmt_at_least(expr.left, _LVL_SUM)
        right = _fmt_at_least(expr.right, _LVL_PROD)
        return "%s + %s" % (left, right), _LVL_SUM
    if kind is species.Fix:
        # a fix body extends as far as possible, so any enclosing context
        # must parenthesize it
        return "fix %s. %s" % (expr.var, format_species(expr.body)), _LVL_FIX
    raise TypeError("not a species expression: %r" % (expr,))


def _fmt_at_least(expr, level):
    text, lvl = _fmt_species(expr)
    if lvl < level:
        return "(%s)" % text
    return text


def format_operator(expr) -> str:
    """Concrete syntax that parses back to the same tree."""
    text, _ = _fmt_operator(expr)
    return text


def _fmt_operator(expr):
    if isinstance(expr, fock.OpA):
        return "A", _LVL_ATOM
    if isinstance(expr, fock.OpAstar):
        return "A*", _LVL_ATOM
    if isinstance(expr, fock.OpPhi):
        return "Phi", _LVL_ATOM
    if isinstance(expr, fock.OpWick):
        return ":Phi^%d:" % expr.power, _LVL_ATOM
    if isinstance(expr, fock.OpScalar):
        return str(expr.value), _LVL_ATOM
    if isinstance(expr, fock.OpAdjoint):
        return "adj(%s)" % format_operator(expr.inner), _LVL_ATOM
    if isinstance(expr, fock.OpProduct):
        left = _fmt_op_at_least(expr.left, _LVL_PROD)
        right = _fmt_op_at_least(expr.right, _LVL_ATOM)
        return "%s * %s" % (left, right), _LVL_PROD
    if isinstance(expr, fock.OpSum):
        left = _fmt_op_at_least(expr.left, _LVL_SUM)
        right = _fmt_op_at_least(expr.right, _LVL_PROD)
        return "%s + %s" % (left, right), _LVL_SUM
    raise TypeError("not an operator expression: %r" % (expr,))


def _fmt_op_at_least(expr, level):
    text, lvl = _fmt_operator(expr)
    if lvl < level:
        return "(%s)" % text
    return text
