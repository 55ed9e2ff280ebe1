"""Text grammar for Laurent polynomials and the small numeric literals.

Grammar (whitespace insignificant everywhere):

    poly     :=  [sign] term { sign term }
    term     :=  [coefficient "*"] factor { "*" factor }   | coefficient
    factor   :=  variable [ "^" [sign] integer ]
    coefficient := integer [ "/" integer ] [ "i" ]
                 | "i"
                 | "(" signed_part [ sign signed_part ] ")"
    signed_part := [sign] ( integer [ "/" integer ] [ "i" ] | "i" )

A coefficient may appear only as the leading factor of a term, parentheses
are allowed only around coefficient literals, and exponents must be plain
(optionally signed) integers - ``z1^(1/2)`` is rejected.  The name ``i`` is
reserved for the imaginary unit and cannot be used as a variable.

``poly_to_text`` output (see the algebra module) round-trips through
``parse_poly`` structurally.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .laurent import GaussianRational, LaurentPoly

_OPERATORS = set("+-*/^()")


class ParseError(ValueError):
    """Syntax or semantic error in an input expression, with position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int) -> None:
        self.kind = kind  # "int", "name", one of _OPERATORS, or "end"
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        if ch in _OPERATORS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], variables: Sequence[str]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.variables = {name: idx for idx, name in enumerate(variables)}
        self.dim = len(variables)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            raise ParseError(f"expected {kind!r}, found {token.text or 'end of input'!r}", token.pos)
        return self.advance()

    def parse_poly(self) -> LaurentPoly:
        terms: dict[tuple[int, ...], GaussianRational] = {}
        sign = 1
        if self.peek().kind in "+-":
            sign = -1 if self.advance().kind == "-" else 1
        while True:
            exponent, coefficient = self.parse_term()
            coefficient = coefficient * sign
            terms[exponent] = terms.get(exponent, GaussianRational()) + coefficient
            token = self.peek()
            if token.kind == "end":
                break
            if token.kind in "+-":
                sign = -1 if self.advance().kind == "-" else 1
                continue
            raise ParseError(f"unexpected token {token.text!r}", token.pos)
        return LaurentPoly(self.dim, terms)

    def parse_term(self) -> tuple[tuple[int, ...], GaussianRational]:
        coefficient = GaussianRational(Fraction(1))
        exponents = [0] * self.dim
        first = True
        while True:
            token = self.peek()
            if token.kind in ("int", "(") or (token.kind == "name" and token.text == "i" and "i" not in self.variables):
                if not first:
                    raise ParseError("coefficient literal must be the leading factor of a term", token.pos)
                coefficient = self.parse_coefficient()
            elif token.kind == "name":
                index = self.variables.get(token.text)
                if index is None:
                    raise ParseError(f"unknown variable {token.text!r}", token.pos)
                self.advance()
                exponents[index] += self.parse_exponent()
            else:
                raise ParseError(f"expected a term, found {token.text or 'end of input'!r}", token.pos)
            first = False
            if self.peek().kind == "*":
                self.advance()
                continue
            return tuple(exponents), coefficient

    def parse_exponent(self) -> int:
        if self.peek().kind != "^":
            return 1
        self.advance()
        sign = 1
        token = self.peek()
        if token.kind in "+-":
            sign = -1 if self.advance().kind == "-" else 1
            token = self.peek()
        if token.kind == "(":
            raise ParseError("exponent must be an integer", token.pos)
        value = self.expect("int")
        return sign * int(value.text)

    def parse_coefficient(self) -> GaussianRational:
        token = self.peek()
        if token.kind == "(":
            self.advance()
            value = self.parse_signed_part()
            if self.peek().kind in "+-":
                sign = -1 if self.advance().kind == "-" else 1
                second = self.parse_signed_part()
                if (value.im != 0) == (second.im != 0):
                    raise ParseError("coefficient literal needs one real and one imaginary part", token.pos)
                value = value + second * sign
            self.expect(")")
            return value
        return self.parse_unsigned_part()

    def parse_signed_part(self) -> GaussianRational:
        sign = 1
        if self.peek().kind in "+-":
            sign = -1 if self.advance().kind == "-" else 1
        return self.parse_unsigned_part() * sign

    def parse_unsigned_part(self) -> GaussianRational:
        token = self.peek()
        if token.kind == "name" and token.text == "i":
            self.advance()
            return GaussianRational(Fraction(0), Fraction(1))
        number = self.expect("int")
        numerator = int(number.text)
        denominator = 1
        if self.peek().kind == "/":
            self.advance()
            denominator_token = self.expect("int")
            denominator = int(denominator_token.text)
            if denominator == 0:
                raise ParseError("zero denominator", denominator_token.pos)
        value = Fraction(numerator, denominator)
        if self.peek().kind == "name" and self.peek().text == "i":
            self.advance()
            return GaussianRational(Fraction(0), value)
        return GaussianRational(value)


def parse_poly(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse an expression into a Laurent polynomial over the given variables."""
    names = list(variables)
    seen: set[str] = set()
    for name in names:
        if name == "i":
            raise ValueError("'i' is reserved for the imaginary unit and cannot name a variable")
        if not name or not (name[0].isalpha() or name[0] == "_") or not all(c.isalnum() or c == "_" for c in name):
            raise ValueError(f"invalid variable name {name!r}")
        if name in seen:
            raise ValueError(f"duplicate variable name {name!r}")
        seen.add(name)
    parser = _Parser(_tokenize(text), names)
    poly = parser.parse_poly()
    return poly


def parse_gaussian_rational(text: str) -> GaussianRational:
    """Parse a standalone exact coefficient literal such as ``1/2+3/4i``.

    A leading sign and surrounding parentheses are accepted; floats are not.
    """
    tokens = _tokenize(text)
    parser = _Parser(tokens, [])
    if parser.peek().kind == "(":
        value = parser.parse_coefficient()
    else:
        value = parser.parse_signed_part()
        if parser.peek().kind in "+-":
            sign = -1 if parser.advance().kind == "-" else 1
            second = parser.parse_signed_part()
            if (value.im != 0) == (second.im != 0):
                raise ParseError("literal needs one real and one imaginary part", 0)
            value = value + second * sign
    end = parser.peek()
    if end.kind != "end":
        raise ParseError(f"unexpected token {end.text!r}", end.pos)
    return value


_FLOAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"


def parse_complex(text: str) -> complex:
    """Parse a decimal complex literal like ``1.5-0.25i`` (flow inputs only)."""
    import re

    stripped = text.strip()
    match = re.fullmatch(rf"(?P<re>[+-]?{_FLOAT})(?P<im>[+-](?:{_FLOAT})?)i", stripped)
    if match:
        im_text = match.group("im")
        im = float(im_text + "1") if im_text in ("+", "-") else float(im_text)
        return complex(float(match.group("re")), im)
    match = re.fullmatch(rf"(?P<im>[+-]?(?:{_FLOAT})?)i", stripped)
    if match:
        im_text = match.group("im")
        if im_text in ("", "+", "-"):
            im_text += "1"
        return complex(0.0, float(im_text))
    match = re.fullmatch(rf"[+-]?{_FLOAT}", stripped)
    if match:
        return complex(float(stripped), 0.0)
    raise ParseError(f"invalid complex literal {text!r}", 0)


def format_complex(z: complex) -> str:
    """Deterministic ``a+bi`` rendering accepted by ``parse_complex``."""
    re_text = repr(z.real)
    im = z.imag
    return f"{re_text}{'+' if im >= 0 else '-'}{repr(abs(im))}i"
