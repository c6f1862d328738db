"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Juxtaposition (``2x``) is rejected. ``/`` is only allowed with a nonzero
constant divisor, so that rational coefficients print and re-parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .polyring import Polynomial, PolyRing


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, NEWLINE, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],;=])"
)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("NEWLINE", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "int":
            tokens.append(Token("INT", m.group(), line, col))
        elif kind == "ident":
            tokens.append(Token("IDENT", m.group(), line, col))
        elif kind == "op":
            tokens.append(Token("OP", m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, tokens: List[Token], skip_newlines: bool = True):
        self.tokens = tokens
        self.pos = 0
        self.skip_newlines = skip_newlines

    def peek(self) -> Token:
        while self.skip_newlines and self.tokens[self.pos].kind == "NEWLINE":
            self.pos += 1
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text in ops

    def expect_op(self, op: str) -> Token:
        tok = self.next()
        if tok.kind != "OP" or tok.text != op:
            raise ParseError(f"expected {op!r}, found {_describe(tok)}", tok.line, tok.col)
        return tok

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.col)


def _describe(tok: Token) -> str:
    if tok.kind == "EOF":
        return "end of input"
    if tok.kind == "NEWLINE":
        return "end of line"
    return repr(tok.text)


class PolynomialParser:
    def __init__(self, stream: TokenStream, ring: PolyRing):
        self.stream = stream
        self.ring = ring

    def expr(self) -> Polynomial:
        result = self.term()
        while self.stream.at_op("+", "-"):
            op = self.stream.next().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.stream.at_op("*", "/"):
            op = self.stream.next()
            rhs = self.unary()
            if op.text == "*":
                result = result * rhs
            else:
                if rhs.degree() > 0 or rhs.is_zero():
                    raise ParseError("division only by a nonzero constant", op.line, op.col)
                result = result.scale(self.ring.field.inv(rhs.constant_coefficient()))
        return result

    def unary(self) -> Polynomial:
        if self.stream.at_op("-"):
            self.stream.next()
            return -self.unary()
        if self.stream.at_op("+"):
            self.stream.next()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.stream.at_op("^"):
            self.stream.next()
            tok = self.stream.next()
            if tok.kind != "INT":
                raise ParseError(f"exponent must be a nonnegative integer literal, found {_describe(tok)}", tok.line, tok.col)
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.stream.next()
        if tok.kind == "INT":
            return self.ring.constant(int(tok.text))
        if tok.kind == "IDENT":
            if tok.text not in self.ring.names:
                raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.col)
            return self.ring.var(tok.text)
        if tok.kind == "OP" and tok.text == "(":
            inner = self.expr()
            self.stream.expect_op(")")
            return inner
        raise ParseError(f"expected a number, variable or '(', found {_describe(tok)}", tok.line, tok.col)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    stream = TokenStream(tokenize(text))
    try:
        poly = PolynomialParser(stream, ring).expr()
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from None
    tok = stream.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected {_describe(tok)} after expression", tok.line, tok.col)
    return poly
