"""Recursive-descent parser for the textual forms used by the CLI.

Grammar (whitespace is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)?
    atom    := INT | "t" | "x" | "y" | "(" expr ")"

    auto    := "x" "->" expr ";" "y" "->" expr  |  "(" expr "," expr ")"
    word    := letter (";" letter)*  |  "empty"
    letter  := ("A" | "B") ":" "(" expr "," expr ")"

    pset    := pinter ("|" pinter)*
    pinter  := patom ("&" patom)*
    patom   := "{" [INT ("," INT)*] "}" | INT ".." INT | "ppowers" | "pmult"
             | "all" | "empty" | "scaled" "(" INT ["," INT] ")"
             | "ppair" "(" INT ")" | "(" pset ")"

Division is only allowed by nonzero elements of F_p(t).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .amalgam import Letter, Word
from .automorphism import Auto
from .bipoly import BiPoly
from .coefficients import RatFunc, TPoly, check_char
from .pstable import PStableSet


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s+|(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<op>->|\.\.|[-+*/^(),;:{}|&])")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        chunk = m.group(0)
        if m.lastgroup:
            tokens.append(Token(m.lastgroup, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str, p: int):
        self.p = check_char(p)
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers ---------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.cur
        return ParseError(msg, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.cur.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.cur
        if tok.text != text:
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1
        return tok

    def expect_int(self) -> int:
        tok = self.cur
        if tok.kind != "int":
            raise self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.i += 1
        return int(tok.text)

    def end(self):
        if self.cur.kind != "eof":
            raise self.error(f"unexpected {self.cur.text!r}")

    # -- polynomial expressions -----------------------------------------

    def expr(self) -> BiPoly:
        value = self.term()
        while self.cur.text in ("+", "-"):
            op = self.cur.text
            self.i += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> BiPoly:
        value = self.unary()
        while self.cur.text in ("*", "/"):
            op = self.cur
            self.i += 1
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise self.error("division only by a nonzero element of F_p(t)", op)
                value = value.scale(rhs.constant_term().inverse())
        return value

    def unary(self) -> BiPoly:
        if self.accept("-"):
            return -self.unary()
        return self.power()

    def power(self) -> BiPoly:
        base = self.atom()
        if self.accept("^"):
            if self.cur.text == "-":
                raise self.error("negative exponents are not allowed")
            base = base ** self.expect_int()
        return base

    def atom(self) -> BiPoly:
        tok = self.cur
        p = self.p
        if tok.kind == "int":
            self.i += 1
            return BiPoly.const(int(tok.text), p, "R")
        if tok.kind == "name":
            self.i += 1
            if tok.text == "t":
                return BiPoly.const(TPoly.t(p), p, "R")
            if tok.text == "x":
                return BiPoly.x(p, "R")
            if tok.text == "y":
                return BiPoly.y(p, "R")
            raise self.error(f"unknown name {tok.text!r}", tok)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        raise self.error(f"unexpected {tok.text or 'end of input'!r}", tok)

    # -- compound forms --------------------------------------------------

    def pair(self) -> Auto:
        self.expect("(")
        f1 = self.expr()
        self.expect(",")
        f2 = self.expr()
        self.expect(")")
        return _auto(f1, f2)

    def auto(self) -> Auto:
        if self.cur.text == "(":
            return self.pair()
        self.expect("x")
        self.expect("->")
        f1 = self.expr()
        self.expect(";")
        self.expect("y")
        self.expect("->")
        f2 = self.expr()
        return _auto(f1, f2)

    def word(self) -> Word:
        if self.accept("empty"):
            return Word((), self.p)
        letters = [self.letter()]
        while self.accept(";"):
            letters.append(self.letter())
        return Word(tuple(letters), self.p)

    def letter(self) -> Letter:
        tok = self.cur
        if tok.text not in ("A", "B"):
            raise self.error("letter tag must be A or B")
        self.i += 1
        self.expect(":")
        g = self.pair()
        try:
            return Letter(tok.text, g)
        except ValueError as exc:
            raise self.error(str(exc), tok) from exc

    def pset(self) -> PStableSet:
        parts = [self.pinter()]
        while self.accept("|"):
            parts.append(self.pinter())
        return parts[0] if len(parts) == 1 else PStableSet("union", self.p, tuple(parts))

    def pinter(self) -> PStableSet:
        parts = [self.patom()]
        while self.accept("&"):
            parts.append(self.patom())
        return parts[0] if len(parts) == 1 else PStableSet("intersection", self.p, tuple(parts))

    def patom(self) -> PStableSet:
        tok = self.cur
        p = self.p
        try:
            if self.accept("{"):
                elems = []
                if self.cur.text != "}":
                    elems.append(self.expect_int())
                    while self.accept(","):
                        elems.append(self.expect_int())
                self.expect("}")
                return PStableSet.finite(elems, p)
            if tok.kind == "int":
                lo = self.expect_int()
                self.expect("..")
                hi = self.expect_int()
                if lo != 2:
                    raise self.error("ranges start at 2", tok)
                return PStableSet.range_to(hi, p)
            if self.accept("("):
                inner = self.pset()
                self.expect(")")
                return inner
            if tok.kind == "name":
                self.i += 1
                name = tok.text
                if name in ("ppowers", "pmult", "all", "empty"):
                    return PStableSet(name, p)
                if name == "scaled":
                    self.expect("(")
                    n = self.expect_int()
                    k = self.expect_int() if self.accept(",") else None
                    self.expect(")")
                    return PStableSet.scaled_all(n, p) if k is None else PStableSet.scaled_range(n, k, p)
                if name == "ppair":
                    self.expect("(")
                    n = self.expect_int()
                    self.expect(")")
                    return PStableSet.ppair(n, p)
                raise self.error(f"unknown set {name!r}", tok)
        except ParseError:
            raise
        except ValueError as exc:
            raise self.error(str(exc), tok) from exc
        raise self.error(f"unexpected {tok.text or 'end of input'!r}", tok)


def _auto(f1: BiPoly, f2: BiPoly) -> Auto:
    ring = "R" if f1.is_integral() and f2.is_integral() else "K"
    return Auto(f1.to_ring(ring), f2.to_ring(ring))


KINDS = ("tpoly", "ratfunc", "bipoly", "auto", "word", "pset")


def parse(text: str, kind: str, p: int):
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    parser = Parser(text, p)
    if kind == "pset":
        value = parser.pset()
    elif kind == "auto":
        value = parser.auto()
    elif kind == "word":
        value = parser.word()
    else:
        start = parser.cur
        f = parser.expr()
        if kind == "bipoly":
            value = f.to_ring("R" if f.is_integral() else "K")
        else:
            if not f.is_constant():
                raise ParseError("expected an expression in t only", start.line, start.col)
            c = f.constant_term()
            if kind == "tpoly":
                if not c.is_integral():
                    raise ParseError("expected a polynomial in t", start.line, start.col)
                value = c.num
            else:
                value = c
    parser.end()
    return value
