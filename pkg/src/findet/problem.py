"""Problem files.

A problem file is a sequence of statements separated by newlines or ``;``
(outside brackets)::

    field Q                      # or: field F 7, field Fp 7, field F_7
    vars x, y
    params u                     # optional parameter block (matrix payloads)
    ideal [x^2 + y^3, x*y]       # payload: one of ideal / poly / matrix / family
    poly x^3 + y^4
    matrix [x, u*y; y, x]        # rows split by ';', entries by ','
    base [x^3 + y^3]             # family: base + t * direction
    direction [x^5]
    points 1, 2, 1/2             # optional sample points
    reference 0                  # optional reference point
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

from .field import GF, QQ, CoefficientField, is_prime
from .localbasis import Ideal
from .matrixops import PolyMatrix
from .parsing import ParseError, PolynomialParser, Token, TokenStream, tokenize
from .polyring import Polynomial, PolyRing

KEYWORDS = ("field", "vars", "params", "ideal", "poly", "matrix", "base", "direction", "points", "reference")


@dataclass(frozen=True)
class ProblemFile:
    field: CoefficientField
    variables: Tuple[str, ...]
    kind: str  # ideal | poly | matrix | family | parametric
    payload: object
    ring: PolyRing
    parameters: Tuple[str, ...] = ()
    points: Tuple = ()
    reference: object = 0


@dataclass
class _Draft:
    field: Optional[CoefficientField] = None
    variables: Optional[Tuple[str, ...]] = None
    parameters: Tuple[str, ...] = ()
    ring: Optional[PolyRing] = None
    payloads: dict = dc_field(default_factory=dict)
    points: Tuple = ()
    reference: object = 0
    seen: dict = dc_field(default_factory=dict)


def _split_statements(tokens: List[Token]) -> List[List[Token]]:
    statements, current, depth = [], [], 0
    for tok in tokens:
        if tok.kind == "EOF":
            break
        if tok.kind == "OP" and tok.text in "([":
            depth += 1
        elif tok.kind == "OP" and tok.text in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced {tok.text!r}", tok.line, tok.col)
        if depth == 0 and (tok.kind == "NEWLINE" or (tok.kind == "OP" and tok.text == ";")):
            if current:
                statements.append(current)
            current = []
            continue
        current.append(tok)
    if depth > 0:
        last = current[-1] if current else tokens[-1]
        raise ParseError("unclosed bracket", last.line, last.col)
    if current:
        statements.append(current)
    return statements


def _stream(tokens: List[Token]) -> TokenStream:
    end = tokens[-1] if tokens else Token("EOF", "", 1, 1)
    return TokenStream(list(tokens) + [Token("EOF", "", end.line, end.col + len(end.text))])


def _names(stream: TokenStream, what: str) -> Tuple[str, ...]:
    names = []
    while True:
        tok = stream.next()
        if tok.kind != "IDENT":
            raise stream.error(f"expected a {what} name", tok)
        if tok.text in KEYWORDS:
            raise stream.error(f"{tok.text!r} is reserved", tok)
        if tok.text in names:
            raise stream.error(f"duplicate {what} {tok.text!r}", tok)
        names.append(tok.text)
        if not stream.at_op(","):
            break
        stream.next()
    return tuple(names)


def _expect_end(stream: TokenStream):
    tok = stream.peek()
    if tok.kind != "EOF":
        raise stream.error(f"unexpected {tok.text!r}", tok)


def _poly_list(stream: TokenStream, ring: PolyRing, rows: bool) -> List[List[Polynomial]]:
    parser = PolynomialParser(stream, ring)
    bracketed = stream.at_op("[")
    if bracketed:
        stream.next()
    out = [[]]
    if bracketed and stream.at_op("]"):
        stream.next()
        return [[]]
    while True:
        try:
            out[-1].append(parser.expr())
        except ZeroDivisionError as exc:
            raise stream.error(str(exc)) from None
        if stream.at_op(","):
            stream.next()
        elif rows and stream.at_op(";"):
            stream.next()
            out.append([])
        else:
            break
    if bracketed:
        stream.expect_op("]")
    return out


def _field(stream: TokenStream) -> CoefficientField:
    tok = stream.next()
    if tok.kind != "IDENT":
        raise stream.error("expected Q, F p or Fp p", tok)
    name = tok.text
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F_") and name[2:].isdigit():
        p, where = int(name[2:]), tok
    elif name in ("F", "Fp", "GF"):
        where = stream.next()
        if where.kind != "INT":
            raise stream.error("expected the characteristic after " + name, where)
        p = int(where.text)
    else:
        raise stream.error(f"unknown field {name!r} (expected Q, F p or Fp p)", tok)
    if not is_prime(p):
        raise ParseError(f"{p} not prime", where.line, where.col)
    return GF(p)


def parse_problem(text: str) -> ProblemFile:
    """Parse and validate a problem file; errors carry line:column positions."""
    draft = _Draft()
    for stmt in _split_statements(tokenize(text)):
        head = stmt[0]
        if head.kind != "IDENT" or head.text not in KEYWORDS:
            raise ParseError(f"expected a statement keyword ({', '.join(KEYWORDS)})", head.line, head.col)
        key = head.text
        if key in draft.seen:
            raise ParseError(f"duplicate {key!r} statement", head.line, head.col)
        draft.seen[key] = head
        stream = _stream(stmt[1:])
        if key == "field":
            draft.field = _field(stream)
        elif key in ("vars", "params"):
            if draft.ring is not None:
                raise ParseError(f"{key!r} must precede polynomial data", head.line, head.col)
            names = _names(stream, "variable" if key == "vars" else "parameter")
            if key == "vars":
                draft.variables = names
            else:
                draft.parameters = names
        else:
            ring = _ring(draft, head)
            if key == "ideal":
                draft.payloads[key] = Ideal(ring, _poly_list(stream, ring, rows=False)[0])
            elif key in ("poly", "reference"):
                try:
                    value = PolynomialParser(stream, ring).expr()
                except ZeroDivisionError as exc:
                    raise stream.error(str(exc)) from None
                if key == "poly":
                    draft.payloads[key] = value
                else:
                    draft.reference = _constant(value, head)
            elif key == "points":
                draft.points = tuple(_constant(v, head) for v in _poly_list(stream, ring, rows=False)[0])
            else:
                rows = _poly_list(stream, ring, rows=True)
                if len({len(r) for r in rows}) != 1 or not rows[0]:
                    raise ParseError("matrix rows must be nonempty and of equal length", head.line, head.col)
                draft.payloads[key] = PolyMatrix(ring, rows)
        _expect_end(stream)
    return _finish(draft)


def _ring(draft: _Draft, head: Token) -> PolyRing:
    if draft.ring is None:
        if draft.field is None:
            raise ParseError("'field' must come first", head.line, head.col)
        if not draft.variables:
            raise ParseError("'vars' must precede polynomial data", head.line, head.col)
        clash = set(draft.parameters) & set(draft.variables)
        if clash:
            raise ParseError(f"parameter names clash with variables: {', '.join(sorted(clash))}", head.line, head.col)
        draft.ring = PolyRing(draft.field, draft.parameters + draft.variables)
    return draft.ring


def _constant(value: Polynomial, head: Token):
    if value.degree() > 0:
        raise ParseError("expected a constant", head.line, head.col)
    return value.constant_coefficient()


def _finish(draft: _Draft) -> ProblemFile:
    if draft.field is None:
        raise ParseError("missing 'field' statement", 1, 1)
    if not draft.variables:
        raise ParseError("missing 'vars' statement", 1, 1)
    ring = draft.ring or PolyRing(draft.field, draft.parameters + draft.variables)
    p = draft.payloads
    family = "base" in p or "direction" in p
    kinds = [k for k in ("ideal", "poly", "matrix") if k in p] + (["family"] if family else [])
    if len(kinds) != 1:
        found = ", ".join(kinds) or "none"
        raise ParseError(f"expected exactly one payload (ideal, poly, matrix or base/direction), found {found}", 1, 1)
    kind = kinds[0]
    if draft.parameters and kind != "matrix":
        raise ParseError("'params' is only allowed with a matrix payload", *_pos(draft, "params"))
    if (draft.points or "reference" in draft.seen) and kind != "family":
        raise ParseError("'points' and 'reference' belong to family problems", *_pos(draft, "points", "reference"))
    if kind == "family":
        if "base" not in p or "direction" not in p:
            raise ParseError("a family needs both 'base' and 'direction'", *_pos(draft, "base", "direction"))
        payload = (p["base"], p["direction"])
        if payload[0].shape != payload[1].shape:
            raise ParseError("base and direction have different shapes", *_pos(draft, "direction"))
    else:
        payload = p[kind]
    if kind == "matrix" and draft.parameters:
        kind = "parametric"
    return ProblemFile(
        field=draft.field,
        variables=draft.variables,
        kind=kind,
        payload=payload,
        ring=ring,
        parameters=draft.parameters,
        points=draft.points,
        reference=draft.reference,
    )


def _pos(draft: _Draft, *keys) -> Tuple[int, int]:
    for k in keys:
        if k in draft.seen:
            tok = draft.seen[k]
            return tok.line, tok.col
    return 1, 1
