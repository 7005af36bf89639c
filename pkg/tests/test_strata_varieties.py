"""Currents, the first-stratum cubic and the canonical ideals."""

from pathlib import Path

import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.strata_varieties import (
    IdealBasis,
    current_rules,
    derive_curve,
    express_current,
    h4_coefficients,
    ideal_basis,
    ideal_reduce,
    mu_dictionary,
    mu_form_findings,
    on_shell_pstar,
)
from models.errors import NonTriangularBasisError, TruncationError
from models.polynomial import p_var
from models.symbols import Family, Stratum
from models.text_format import canonical_string, parse_polynomial

SIGMA1_FREE = {(2, k) for k in range(-1, 20)} | {(3, -1), (3, 1), (3, 3)}


@pytest.mark.parametrize(
    "n,printed",
    [
        (2, "p[1]^2 - 2*u[1]"),
        (3, "p[1]^3 - 3*u[1]*p[1] - 3*u[2]"),
        (4, "p[1]^4 - 4*u[1]*p[1]^2 - 4*u[2]*p[1] - 4*u[3] + 2*u[1]^2"),
        (5, "p[1]^5 - 5*u[1]*p[1]^3 - 5*u[2]*p[1]^2 - (5*u[3] - 5*u[1]^2)*p[1] - 5*u[4] + 5*u[1]*u[2]"),
    ],
)
def test_big_cell_currents_match_printed(n, printed):
    current = express_current(Stratum.BIG_CELL, n)
    assert current.text == canonical_string(parse_polynomial(printed))
    assert current.matches_printed is True


def test_generators_are_not_currents():
    with pytest.raises(TruncationError):
        express_current(Stratum.BIG_CELL, 1)
    with pytest.raises(TruncationError):
        express_current(Stratum.SIGMA1, 3)


def test_first_stratum_currents_use_free_parameters_only():
    for n in (4, 5, 6):
        expression = express_current(Stratum.SIGMA1, n).expression
        for key in expression.variables():
            if key.family is Family.P:
                assert key.indices[0] in (2, 3)
            else:
                assert key.family is Family.H
                assert key.indices in SIGMA1_FREE


def test_h4_coefficients_read_off_p4():
    coefficients = h4_coefficients()
    assert coefficients[2] == parse_polynomial("-2*H[2,-1]")
    assert coefficients[1] == parse_polynomial("-H[2,-1]^2")


def test_curve_residuals_vanish():
    derivation = derive_curve()
    assert set(derivation.residuals) == {6, 1, -1, -2}
    for degree, residual in derivation.residuals.items():
        assert residual.is_zero, f"degree {degree}: {canonical_string(residual)}"
    assert derivation.agrees or [f.code for f in derivation.findings] == ["curve-coefficients"]


def test_curve_mu_dictionary_negates_lower_coefficients():
    derivation = derive_curve()
    mu = mu_dictionary(derivation.derived)
    assert sorted(mu) == [0, 1, 2, 3, 4]
    assert mu[4] == parse_polynomial("-3*H[2,-1]")
    rebuilt = parse_polynomial("p[3]^2 - p[2]^3")
    for a, monomial in zip((4, 3, 2, 1, 0), ("p[2]*p[3]", "p[2]^2", "p[3]", "p[2]", "1")):
        rebuilt = rebuilt - mu[a] * parse_polynomial(monomial)
    assert rebuilt == derivation.derived


def test_mu_dictionary_requires_monic_cubic():
    with pytest.raises(NonTriangularBasisError):
        mu_dictionary(parse_polynomial("2*p[3]^2 - p[2]^3"))


def test_printed_mu_form_repeats_a_parameter():
    findings = mu_form_findings()
    assert [finding.code for finding in findings] == ["mu-parameters"]


def test_big_cell_canonical_ideal_holds_on_shell():
    for n, residual in on_shell_pstar(6).items():
        assert residual.is_zero, n


def test_ideal_reduce_on_big_cell_generators():
    basis = ideal_basis(Stratum.BIG_CELL, 4)
    assert sorted(basis.generators) == ["h*2", "h*3", "h*4"]
    f = parse_polynomial("pstar[3]*pstar[2] - u[2]*u[1] + pstar[4]")
    assert ideal_reduce(f, basis) == parse_polynomial("u[3]")


def test_ideal_reduce_substitutes_currents():
    currents = current_rules(Stratum.BIG_CELL, 3)
    reduced = ideal_reduce(p_var(2), ideal_basis(Stratum.BIG_CELL, 2), currents)
    assert reduced == parse_polynomial("p[1]^2 - 2*u[1]")


def test_ideal_reduce_rejects_non_constant_leading_coefficient():
    basis = IdealBasis(Stratum.BIG_CELL, {"bad": parse_polynomial("u[1]*pstar[2] - 1")})
    with pytest.raises(NonTriangularBasisError):
        ideal_reduce(parse_polynomial("pstar[2]"), basis)


def test_ideal_basis_needs_room():
    with pytest.raises(TruncationError):
        ideal_basis(Stratum.BIG_CELL, 1)
