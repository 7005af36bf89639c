"""Hirota-Miwa equations against the tau-substituted closure items."""

from fractions import Fraction
from pathlib import Path

import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.hirota import exactness_conditions, hirota_equation, tau_substitute, tau_substitution_check
from models.structure_constants import bcsc
from models.text_format import parse_polynomial


def test_tau_substitution_of_h():
    assert tau_substitute(parse_polynomial("H[2,3]")) == parse_polynomial("-1/3*Fhess[2,3]")
    assert tau_substitute(parse_polynomial("u[1]")) == parse_polynomial("u[1]")


def test_lowest_equation_is_trivial():
    assert hirota_equation(1, 1, 1).is_zero
    assert tau_substitute(bcsc(1, 1, 1)).is_zero


def test_derived_variant_is_the_substitution():
    for i in range(1, 4):
        for k in range(1, 4):
            for m in range(1, 4):
                assert tau_substitute(bcsc(i, k, m)) == hirota_equation(i, k, m, "derived")


def test_variants_agree_when_the_weights_coincide():
    assert hirota_equation(1, 2, 2, "printed") == hirota_equation(1, 2, 2, "derived")
    assert hirota_equation(2, 1, 2, "printed") != hirota_equation(2, 1, 2, "derived")


def test_bad_variant_and_indices():
    with pytest.raises(ValueError):
        hirota_equation(1, 1, 1, "bogus")
    with pytest.raises(ValueError):
        hirota_equation(0, 1, 1)


def test_substitution_check_through_four():
    report = tau_substitution_check(4, 4, 4)
    assert len(report.items) == 64
    assert report.residuals().all_zero
    assert set(report.factors().values()) == {Fraction(1)}
    codes = [finding.code for finding in report.findings]
    assert codes == ["hirota-printed"]
    by_index = {item.indices: item for item in report.items}
    assert by_index[(1, 1, 2)].printed_factor == 1
    assert by_index[(2, 1, 2)].printed_factor is None


def test_substitution_check_is_independent_of_worker_count():
    serial = tau_substitution_check(3, 3, 3, workers=1)
    pooled = tau_substitution_check(3, 3, 3, workers=2)
    assert [item.indices for item in serial.items] == [item.indices for item in pooled.items]
    assert serial.factors() == pooled.factors()


def test_exactness_conditions_are_hessian_symmetries():
    system = exactness_conditions(4)
    assert (1, 2, 3) in system.items
    assert system.all_zero


def test_vanishing_substitution_against_nonzero_printed_equation_is_a_mismatch():
    assert tau_substitute(bcsc(2, 2, 2)).is_zero
    assert not hirota_equation(2, 2, 2, "printed").is_zero
    report = tau_substitution_check(3, 3, 3)
    by_index = {item.indices: item for item in report.items}
    for indices in [(2, 2, 2), (3, 3, 3)]:
        assert by_index[indices].factor == 1
        assert by_index[indices].printed_factor is None
    mismatched = sorted(item.indices for item in report.items if item.printed_factor is None)
    (finding,) = [f for f in report.findings if f.code == "hirota-printed"]
    assert f"at {len(mismatched)} index triples" in finding.message
    assert (2, 2, 2) in mismatched
