"""Elementary Schur polynomials against a sympy series oracle."""

from fractions import Fraction
from pathlib import Path
from random import Random

import sys

import sympy

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.schur import SchurTable, canonical_pstar, schur_P, t_symbol
from models.text_format import parse_polynomial

ORDER = 10


def test_low_order_polynomials():
    assert schur_P(0) == 1
    assert schur_P(1) == parse_polynomial("t[1]")
    assert schur_P(2) == parse_polynomial("1/2*t[1]^2 + t[2]")
    assert schur_P(3) == parse_polynomial("1/6*t[1]^3 + t[1]*t[2] + t[3]")
    assert schur_P(-1).is_zero


def test_generating_function_matches_sympy_series():
    rng = Random(11)
    z = sympy.Symbol("z")
    values = {k: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for k in range(1, ORDER + 1)}
    exponent = sum(sympy.Rational(v.numerator, v.denominator) * z**k for k, v in values.items())
    series = sympy.series(sympy.exp(exponent), z, 0, ORDER + 1).removeO()
    point = {t_symbol(k): v for k, v in values.items()}
    for n in range(ORDER + 1):
        expected = sympy.Rational(series.coeff(z, n))
        value = Fraction(schur_P(n).evaluate(point))
        assert expected == sympy.Rational(value.numerator, value.denominator), n


def test_derivative_chain_through_order_ten():
    table = SchurTable.build(ORDER)
    defects = table.derivative_defects()
    assert len(defects) == ORDER * (ORDER + 1) // 2
    assert all(poly.is_zero for poly in defects.values())


def test_canonical_pstar_chain():
    assert canonical_pstar(2) == parse_polynomial("1/2*p[1]^2 - 1/2*p[2]")
    assert all(poly.is_zero for poly in SchurTable.build(ORDER).pstar_chain_defects().values())
