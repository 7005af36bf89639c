"""Canonical text, LaTeX and JSON codecs for polynomials.

The text grammar is the one printed by reports::

    p[1]^2 - 2*H[1,1]
    -3/2*D[u[2]; x2]
    D[u[1]; x2,x3]*u[2] + 1/2

``parse_polynomial(canonical_string(f)) == f`` holds for every polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Tuple

from models.errors import ParseError
from models.polynomial import Coefficient, Monomial, Polynomial, as_coefficient
from models.symbols import FAMILIES_BY_NAME, FAMILY_NAMES, Family, JetKey, make_jet, make_symbol

_LATEX_NAMES = {
    Family.H: "H",
    Family.U: "u",
    Family.P: "p",
    Family.PSTAR: "p^*",
    Family.X: "x",
    Family.DELTA: "\\Delta",
    Family.J: "J",
    Family.JSTAR: "J^*",
    Family.FHESS: "F",
    Family.MU: "\\mu",
    Family.V: "v",
    Family.W: "w",
    Family.PI: "\\pi",
    Family.T: "t",
}


def _format_rational(value: Coefficient) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def symbol_string(key: JetKey) -> str:
    base = f"{FAMILY_NAMES[key.family]}[{','.join(str(i) for i in key.indices)}]"
    if not key.derivatives:
        return base
    directions = ",".join(f"x{d}" for d in key.derivatives)
    return f"D[{base}; {directions}]"


def monomial_string(mono: Monomial) -> str:
    factors = []
    for key, exp in mono:
        text = symbol_string(key)
        factors.append(text if exp == 1 else f"{text}^{exp}")
    return "*".join(factors)


def _render_terms(poly: Polynomial, coeff_fmt, mono_fmt, times: str) -> str:
    if poly.is_zero:
        return "0"
    pieces: List[str] = []
    for position, (mono, coeff) in enumerate(poly.sorted_terms()):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if not mono:
            body = coeff_fmt(magnitude)
        elif magnitude == 1:
            body = mono_fmt(mono)
        else:
            body = f"{coeff_fmt(magnitude)}{times}{mono_fmt(mono)}"
        if position == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def canonical_string(poly: Polynomial) -> str:
    """Deterministic text form; terms in descending monomial order."""

    return _render_terms(poly, _format_rational, monomial_string, "*")


# -- LaTeX ---------------------------------------------------------------------------


def _latex_rational(value: Coefficient) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"\\frac{{{value.numerator}}}{{{value.denominator}}}"


def latex_symbol(key: JetKey) -> str:
    name = _LATEX_NAMES[key.family]
    indices = key.indices
    if key.family is Family.H:
        base = f"H^{{{indices[0]}}}_{{{indices[1]}}}"
    elif len(indices) == 1:
        base = f"{name}_{{{indices[0]}}}"
    else:
        base = f"{name}_{{{indices[0]},{indices[1]}}}"
    if not key.derivatives:
        return base
    directions = " ".join(f"x_{{{d}}}" for d in key.derivatives)
    return f"\\partial_{{{directions}}} {base}"


def _latex_monomial(mono: Monomial) -> str:
    parts = []
    for key, exp in mono:
        text = latex_symbol(key)
        if exp != 1:
            text = f"\\left({text}\\right)^{{{exp}}}" if key.derivatives else f"{{{text}}}^{{{exp}}}"
        parts.append(text)
    return " ".join(parts)


def latex_string(poly: Polynomial) -> str:
    """LaTeX rendering with jets in partial-derivative notation."""

    return _render_terms(poly, _latex_rational, _latex_monomial, " ")


# -- JSON ----------------------------------------------------------------------------


def polynomial_to_json(poly: Polynomial) -> Dict[str, Any]:
    terms = []
    for mono, coeff in poly.sorted_terms():
        terms.append(
            {
                "coeff": _format_rational(coeff),
                "monomial": [
                    {
                        "symbol": FAMILY_NAMES[key.family],
                        "indices": list(key.indices),
                        "jets": list(key.derivatives),
                        "exp": exp,
                    }
                    for key, exp in mono
                ],
            }
        )
    return {"terms": terms}


def polynomial_from_json(payload: Dict[str, Any]) -> Polynomial:
    terms: Dict[Monomial, Coefficient] = {}
    try:
        for term in payload["terms"]:
            factors = []
            for factor in term["monomial"]:
                base = make_symbol(FAMILIES_BY_NAME[factor["symbol"]], *factor["indices"])
                factors.append((make_jet(base, factor.get("jets", [])), int(factor["exp"])))
            mono = tuple(sorted(factors))
            terms[mono] = terms.get(mono, 0) + as_coefficient(term["coeff"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed polynomial JSON: {exc}") from exc
    return Polynomial(terms)


# -- parser --------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def fail(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.fail(f"expected '{char}'")
        self.pos += 1

    def integer(self, signed: bool = False) -> int:
        self.skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start : self.pos]
        if not digits or digits in "+-":
            self.pos = start
            raise self.fail("expected an integer")
        return int(digits)

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start : self.pos]

    def parse(self) -> Polynomial:
        result = self.expression()
        if self.peek():
            raise self.fail(f"unexpected character '{self.peek()}'")
        return result

    def expression(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        result = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            result = result + self.term().scale(sign)
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek() in ("*", "/"):
            operator = self.text[self.pos]
            self.pos += 1
            if operator == "*":
                result = result * self.factor()
            else:
                divisor = self.integer()
                if divisor == 0:
                    raise self.fail("division by zero")
                result = result / divisor
        return result

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            exponent = self.integer()
            base = base**exponent
        return base

    def atom(self) -> Polynomial:
        char = self.peek()
        if not char:
            raise self.fail("unexpected end of input")
        if char == "(":
            self.pos += 1
            inner = self.expression()
            self.expect(")")
            return inner
        if char.isdigit():
            return Polynomial.constant(self.integer())
        if char == "-":
            self.pos += 1
            return -self.atom()
        start = self.pos
        word = self.name()
        if word == "D" and self.peek() == "[":
            return Polynomial.variable(self.jet())
        if word not in FAMILIES_BY_NAME:
            self.pos = start
            raise self.fail(f"unknown symbol family '{word}'")
        return Polynomial.variable(self.symbol_tail(FAMILIES_BY_NAME[word]))

    def symbol_tail(self, family: Family) -> JetKey:
        self.expect("[")
        indices = [self.integer(signed=True)]
        while self.peek() == ",":
            self.pos += 1
            indices.append(self.integer(signed=True))
        self.expect("]")
        try:
            return make_symbol(family, *indices)
        except ValueError as exc:
            raise self.fail(str(exc)) from exc

    def jet(self) -> JetKey:
        self.expect("[")
        word = self.name()
        if word not in FAMILIES_BY_NAME:
            raise self.fail(f"unknown symbol family '{word}'")
        base = self.symbol_tail(FAMILIES_BY_NAME[word])
        self.expect(";")
        directions: List[int] = []
        while True:
            if self.peek() != "x":
                raise self.fail("expected a direction 'x<n>'")
            self.pos += 1
            directions.append(self.integer())
            if self.peek() == ",":
                self.pos += 1
                continue
            if self.peek() == "x":
                continue
            break
        self.expect("]")
        return make_jet(base, directions)


def parse_polynomial(text: str) -> Polynomial:
    """Parse the canonical grammar; ``/`` only divides by integer literals."""

    if not text or not text.strip():
        raise ParseError("empty polynomial text", text, 0)
    return _Parser(text).parse()


def parse_symbol(text: str) -> JetKey:
    poly = parse_polynomial(text)
    items: List[Tuple[Monomial, Coefficient]] = list(poly.items())
    if len(items) != 1 or items[0][1] != 1 or len(items[0][0]) != 1 or items[0][0][0][1] != 1:
        raise ParseError(f"not a single symbol: {text!r}", text, 0)
    return items[0][0][0][0]


__all__ = [
    "canonical_string",
    "latex_string",
    "latex_symbol",
    "monomial_string",
    "parse_polynomial",
    "parse_symbol",
    "polynomial_from_json",
    "polynomial_to_json",
    "symbol_string",
]
