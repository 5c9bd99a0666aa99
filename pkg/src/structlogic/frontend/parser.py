"""Text syntax for boolean expressions.

Grammar (keywords are case-insensitive)::

    expr    := and_expr (("OR" | "XOR" | "XNOR") and_expr)*
    and_expr:= unary (("AND" | "NAND") unary)*
    unary   := "NOT" unary | atom
    atom    := IDENT | "0" | "1" | "(" expr ")"

All binary operators are left-associative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..dualrail import BinOp, BoolExpr, Const, Not, Var

KEYWORDS = {"NOT", "AND", "OR", "NAND", "XOR", "XNOR"}
OR_LEVEL = ("OR", "XOR", "XNOR")
AND_LEVEL = ("AND", "NAND")

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<lit>[01])|(?P<punct>[()]))")


class ParseDiagnostic(ValueError):
    def __init__(self, position: int, message: str):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "kw", "lit", "(", ")", "eof"
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos == len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseDiagnostic(pos, f"unexpected character {src[pos]!r}")
        start = m.start(m.lastgroup)
        text = m.group(m.lastgroup)
        if m.lastgroup == "ident":
            if text.upper() in KEYWORDS:
                tokens.append(Token("kw", text.upper(), start))
            else:
                tokens.append(Token("ident", text, start))
        elif m.lastgroup == "lit":
            # "01" or "1A" is not a literal followed by something, it's garbage
            if m.end() < len(src) and (src[m.end()].isalnum() or src[m.end()] == "_"):
                raise ParseDiagnostic(m.end(), f"unexpected character {src[m.end()]!r}")
            tokens.append(Token("lit", text, start))
        else:
            tokens.append(Token(text, text, start))
        pos = m.end()
    tokens.append(Token("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self) -> BoolExpr:
        e = self.expr()
        if self.tok.kind != "eof":
            if self.tok.kind == ")":
                raise ParseDiagnostic(self.tok.pos, "unbalanced ')'")
            raise ParseDiagnostic(self.tok.pos, f"expected operator, found {self.tok.text!r}")
        return e

    def expr(self) -> BoolExpr:
        left = self.and_expr()
        while self.tok.kind == "kw" and self.tok.text in OR_LEVEL:
            op = self.advance().text
            left = BinOp(op, left, self.and_expr())
        return left

    def and_expr(self) -> BoolExpr:
        left = self.unary()
        while self.tok.kind == "kw" and self.tok.text in AND_LEVEL:
            op = self.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> BoolExpr:
        if self.tok.kind == "kw" and self.tok.text == "NOT":
            self.advance()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> BoolExpr:
        t = self.tok
        if t.kind == "ident":
            self.advance()
            return Var(t.text)
        if t.kind == "lit":
            self.advance()
            return Const(int(t.text))
        if t.kind == "(":
            self.advance()
            e = self.expr()
            if self.tok.kind != ")":
                raise ParseDiagnostic(self.tok.pos, f"unbalanced '(' opened at offset {t.pos}")
            self.advance()
            return e
        if t.kind == "eof":
            raise ParseDiagnostic(t.pos, "unexpected end of input, expected an operand")
        if t.kind == ")":
            raise ParseDiagnostic(t.pos, "unbalanced ')'" if self.i == 0 else "expected an operand before ')'")
        raise ParseDiagnostic(t.pos, f"dangling operator {t.text!r}")


def parse(src: str) -> BoolExpr:
    return _Parser(src).parse()


def to_text(e: BoolExpr) -> str:
    """Canonical fully parenthesized form; ``parse(to_text(e)) == e``."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Not):
        return f"(NOT {to_text(e.child)})"
    return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
