"""Text notation for polynomials.

Associative: ``1/2*xy - 1/2*yx``.  Lie: ``2*[x,[x,[x,y]]] + 3*[y,[x,[x,y]]]``;
bracket arguments may themselves be linear combinations, e.g. ``[y,-x-y]``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .lie import LiePoly
from .scalars import QQ
from .words import XY, Alphabet, AssocPoly, parse_word

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")
_MINUS = "−"


def _tokens(text: str):
    out = []
    pos = 0
    text = text.replace(_MINUS, "-").strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None and not sym.isspace():
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, alphabet, field, atom):
        self.toks = _tokens(text)
        self.i = 0
        self.alphabet = alphabet
        self.field = field
        self.atom = atom
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def parse(self):
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def expr(self):
        sign = 1
        if self.at("sym", "-"):
            self.take()
            sign = -1
        elif self.at("sym", "+"):
            self.take()
        acc = self.term().scale(sign)
        while self.at("sym", "+") or self.at("sym", "-"):
            s = 1 if self.take()[1] == "+" else -1
            acc = acc + self.term().scale(s)
        return acc

    def term(self):
        coeff = Fraction(1)
        if self.at("num"):
            coeff = Fraction(self.take()[1])
            if self.at("sym", "/"):
                self.take()
                den = self.take("num")[1]
                if den == 0:
                    raise ParseError(f"zero denominator in {self.text!r}")
                coeff /= den
            if self.at("sym", "*"):
                self.take()
            elif not self.starts_atom():
                if coeff == 0:
                    return self.atom(self, "zero")
                return self.atom(self, None).scale(coeff)
        return self.atom(self, self.peek()).scale(coeff)

    def starts_atom(self):
        return self.at("name") or self.at("sym", "[") or self.at("sym", "(")


def _lie_atom(parser, tok):
    if tok == "zero":
        return LiePoly.zero(parser.alphabet, parser.field)
    if tok is None:
        raise ParseError("a bare number is not a Lie element")
    if tok == ("sym", "["):
        parser.take()
        a = parser.expr()
        parser.take("sym", ",")
        b = parser.expr()
        parser.take("sym", "]")
        return a.bracket(b)
    if tok == ("sym", "("):
        parser.take()
        a = parser.expr()
        parser.take("sym", ")")
        return a
    name = parser.take("name")[1]
    if name not in parser.alphabet.letters:
        raise ParseError(f"unknown generator {name!r}")
    return LiePoly.gen(name, parser.alphabet, parser.field)


def _assoc_atom(parser, tok):
    if tok == "zero":
        return AssocPoly({}, parser.alphabet, parser.field)
    if tok is None:
        return AssocPoly.one(parser.alphabet, parser.field)
    if tok == ("sym", "("):
        parser.take()
        a = parser.expr()
        parser.take("sym", ")")
        return a
    name = parser.take("name")[1]
    try:
        w = parse_word(name, parser.alphabet)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return AssocPoly({w: 1}, parser.alphabet, parser.field)


def parse_lie(text: str, alphabet: Alphabet = XY, field=QQ) -> LiePoly:
    return _Parser(text, alphabet, field, _lie_atom).parse()


def parse_assoc(text: str, alphabet: Alphabet = XY, field=QQ) -> AssocPoly:
    return _Parser(text, alphabet, field, _assoc_atom).parse()
