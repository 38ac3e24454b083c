"""Tokenizer and polynomial-term grammar shared by the text parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[=\[\],;+\-*^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind in ("int", "name", "op"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]) -> None:
        self._tokens = tokens
        self._i = 0

    def peek(self) -> Token:
        return self._tokens[self._i]

    def next(self) -> Token:
        tok = self._tokens[self._i]
        if tok.kind != "eof":
            self._i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("op", "name") and tok.text == text

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text or tok.kind == "eof":
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {text!r}, found {found}", tok.line, tok.col)
        return tok

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)


@dataclass(frozen=True)
class Term:
    coeff: int
    exponent: int
    token: Token


def _is_var(tok: Token) -> bool:
    return tok.kind == "name" and tok.text in ("x", "X")


def parse_terms(stream: TokenStream) -> list[Term]:
    """Parse ``[+|-] term {(+|-) term}`` where a term is ``c``, ``c*x^e``, ``x^e`` or ``x``."""
    terms = []
    sign = 1
    if stream.at("+") or stream.at("-"):
        sign = -1 if stream.next().text == "-" else 1
    while True:
        tok = stream.peek()
        if tok.kind == "int":
            stream.next()
            coeff = int(tok.text)
            exponent = 0
            if stream.at("*"):
                stream.next()
                if not _is_var(stream.peek()):
                    raise stream.error("expected 'x' after '*'")
                exponent = _parse_monomial(stream)
        elif _is_var(tok):
            coeff = 1
            exponent = _parse_monomial(stream)
        else:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected a polynomial term, found {found}", tok.line, tok.col)
        terms.append(Term(sign * coeff, exponent, tok))
        if stream.at("+") or stream.at("-"):
            sign = -1 if stream.next().text == "-" else 1
        else:
            return terms


def _parse_monomial(stream: TokenStream) -> int:
    stream.next()  # the variable
    if not stream.at("^"):
        return 1
    stream.next()
    tok = stream.next()
    if tok.kind != "int":
        raise ParseError("expected an integer exponent after '^'", tok.line, tok.col)
    return int(tok.text)
