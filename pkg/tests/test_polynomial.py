"""Exact polynomial arithmetic, jets and the canonical text grammar."""

from fractions import Fraction
from pathlib import Path
from random import Random

import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from models.constraints import normalize_polynomial, proportionality_factor
from models.errors import ParseError
from models.polynomial import Polynomial, h_var, u_var, var
from models.symbols import Family, JetKey, Stratum, make_jet, make_symbol
from models.text_format import (
    canonical_string,
    latex_string,
    parse_polynomial,
    parse_symbol,
    polynomial_from_json,
    polynomial_to_json,
)


def P(text: str) -> Polynomial:
    return parse_polynomial(text)


def test_zero_terms_are_never_stored():
    p1 = var(Family.P, 1)
    difference = (p1 + 1) - (p1 + 1)
    assert difference.is_zero
    assert len(difference) == 0
    assert canonical_string(difference) == "0"


def test_integral_fractions_stay_integers():
    half = P("2*H[1,1]").scale(Fraction(1, 2))
    (_, coeff), = half.items()
    assert coeff == 1
    assert type(coeff) is int


def test_binomial_square_expands_exactly():
    a, b = var(Family.U, 1), var(Family.U, 2)
    assert (a + b) ** 2 == P("u[1]^2 + 2*u[1]*u[2] + u[2]^2")
    assert (a - b) * (a + b) == P("u[1]^2 - u[2]^2")


def test_canonical_order_puts_greatest_variable_first():
    assert canonical_string(P("-2*H[1,1] + p[1]^2")) == "p[1]^2 - 2*H[1,1]"
    assert canonical_string(P("u[2]*D[u[1]; x3,x2] + 1/2")) == "D[u[1]; x2,x3]*u[2] + 1/2"


@pytest.mark.parametrize(
    "text",
    [
        "p[1]^2 - 2*H[1,1]",
        "-3/2*D[u[2]; x2]",
        "H[2,4]*H[3,-1] - 1/6",
    ],
)
def test_canonical_strings_parse_back(text):
    assert canonical_string(P(text)) == text


def test_mixed_partials_commute():
    u1 = make_symbol(Family.U, 1)
    assert make_jet(u1, (3, 2)) == make_jet(u1, (2, 3))
    assert P("D[u[1]; x3,x2]") == P("D[u[1]; x2,x3]")


def test_hessian_jets_merge_their_index_multiset():
    expected = JetKey(Family.FHESS, (1, 1), (2,))
    assert make_jet(make_symbol(Family.FHESS, 2, 1), (1,)) == expected
    assert make_jet(make_symbol(Family.FHESS, 1, 1), (2,)) == expected


def test_formal_derivative_follows_leibniz():
    assert P("u[1]^2").formal_derivative(2) == P("2*u[1]*D[u[1]; x2]")
    assert P("x[2]*u[1]").formal_derivative(2) == P("u[1] + x[2]*D[u[1]; x2]")
    assert P("H[1,1]").formal_derivative(1).is_zero


def test_partial_derivative():
    u1 = make_symbol(Family.U, 1)
    assert P("u[1]^3*u[2] + u[2]").partial(u1) == P("3*u[1]^2*u[2]")


def test_h_var_respects_stratum_conventions():
    assert h_var(1, 0).is_zero
    assert h_var(0, 2).is_zero
    assert not h_var(2, 3).is_zero
    assert not h_var(3, -1, Stratum.SIGMA1).is_zero
    assert h_var(1, 2, Stratum.SIGMA1).is_zero
    assert h_var(2, -2, Stratum.SIGMA1).is_zero
    assert u_var(0).is_zero


def test_substitution_rejects_jet_keys():
    jet_key = make_jet(make_symbol(Family.U, 1), (2,))
    with pytest.raises(ValueError):
        P("u[1]").substitute({jet_key: P("u[2]")})


def test_simultaneous_substitution():
    u1, u2 = make_symbol(Family.U, 1), make_symbol(Family.U, 2)
    swapped = P("u[1] - 2*u[2]").substitute({u1: P("u[2]"), u2: P("u[1]")})
    assert swapped == P("u[2] - 2*u[1]")


def test_normalization_clears_denominators_and_sign():
    normalized = normalize_polynomial(P("1/2*H[1,1] - 3/4*u[1]"))
    assert canonical_string(normalized) == "3*u[1] - 2*H[1,1]"
    assert normalize_polynomial(P("4*p[2] + 6")) == P("2*p[2] + 3")


def test_proportionality_factor():
    base = P("u[1]^2 - u[2]")
    assert proportionality_factor(base.scale(Fraction(-3, 2)), base) == Fraction(-3, 2)
    assert proportionality_factor(base + 1, base) is None
    assert proportionality_factor(Polynomial.zero(), Polynomial.zero()) == 0


def test_evaluate_at_a_point():
    h11, u2 = make_symbol(Family.H, 1, 1), make_symbol(Family.U, 2)
    assert P("1/2*H[1,1]^2 - u[2]").evaluate({h11: 2, u2: 1}) == 1


def test_latex_rendering():
    assert latex_string(P("D[u[1]; x2]")) == "\\partial_{x_{2}} u_{1}"
    assert latex_string(P("1/2*H[1,2]")) == "\\frac{1}{2} H^{1}_{2}"


def test_json_codec_preserves_jets():
    poly = P("D[mu[4]; x3] - 2/9*mu[4]^2")
    assert polynomial_from_json(polynomial_to_json(poly)) == poly


def test_parse_symbol_accepts_single_symbols_only():
    assert parse_symbol("H[2,3]") == make_symbol(Family.H, 2, 3)
    with pytest.raises(ParseError):
        parse_symbol("2*H[2,3]")


@pytest.mark.parametrize(
    "text",
    ["", "H[1]", "q[1]", "p[1] +", "p[1]/0", "p[1] p[2]", "D[u[1]; 2]"],
)
def test_malformed_text_raises_parse_error(text):
    with pytest.raises(ParseError):
        parse_polynomial(text)


def test_parse_error_reports_the_column():
    with pytest.raises(ParseError) as excinfo:
        parse_polynomial("p[1] + q[2]")
    assert excinfo.value.position == 7


def _random_key(rng: Random) -> JetKey:
    family = rng.choice([Family.H, Family.U, Family.P, Family.X])
    if family is Family.H:
        return make_symbol(Family.H, rng.randint(1, 3), rng.randint(1, 3))
    base = make_symbol(family, rng.randint(1, 3))
    if family is Family.U and rng.random() < 0.5:
        return make_jet(base, [rng.randint(1, 3) for _ in range(rng.randint(1, 2))])
    return base


def _random_polynomial(rng: Random, terms: int = 4) -> Polynomial:
    total = Polynomial.zero()
    for _ in range(rng.randint(0, terms)):
        coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        term = Polynomial.constant(coeff)
        for _ in range(rng.randint(0, 3)):
            term = term * Polynomial.variable(_random_key(rng), rng.randint(1, 2))
        total = total + term
    return total


@pytest.fixture(scope="module")
def samples():
    rng = Random(20240611)
    return [tuple(_random_polynomial(rng) for _ in range(3)) for _ in range(200)]


def test_ring_axioms_hold(samples):
    for f, g, h in samples:
        assert (f + g) + h == f + (g + h)
        assert f + g == g + f
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f
        assert f * (g + h) == f * g + f * h
        assert (f - f).is_zero


def test_canonical_text_parses_back(samples):
    for f, _, _ in samples:
        assert parse_polynomial(canonical_string(f)) == f


def test_json_codec_parses_back(samples):
    for f, g, _ in samples:
        assert polynomial_from_json(polynomial_to_json(f * g)) == f * g


def test_total_derivatives_commute(samples):
    rng = Random(7)
    for f, _, _ in samples:
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        assert f.formal_derivative(a).formal_derivative(b) == f.formal_derivative(b).formal_derivative(a)


def test_latex_golden_strings():
    assert latex_string(P("-3/2*D[u[2]; x1,x2]")) == "-\\frac{3}{2} \\partial_{x_{1} x_{2}} u_{2}"
    assert latex_string(P("D[u[1]; x1]^2")) == "\\left(\\partial_{x_{1}} u_{1}\\right)^{2}"
    assert latex_string(P("H[2,3]^3")) == "{H^{2}_{3}}^{3}"
    assert latex_string(P("-1/4")) == "-\\frac{1}{4}"
    assert latex_string(Polynomial.zero()) == "0"
