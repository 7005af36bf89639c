"""Brackets, Jacobi sums, the Poisson-ideal identity and the J -> Delta equivalence."""

from pathlib import Path

import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.poisson import (
    alpha_closed_form,
    beta_closed_form,
    bracket,
    darboux_findings,
    darboux_residuals,
    darboux_system,
    equivalence_J_vs_Delta,
    first_family,
    ideal_bracket_residue,
    jacobi_defect,
    jstar_consistency,
    linear_ansatz_constraints,
    restriction_decomposition,
)
from models.errors import ForeignSymbolError
from models.phase_space import darboux, generic_p, jet_ansatz
from models.text_format import parse_polynomial


def P(text: str):
    return parse_polynomial(text)


def test_darboux_bracket_table():
    ps = darboux()
    assert bracket(P("x[1]"), P("p[1]"), ps) == 1
    assert bracket(P("p[1]"), P("x[1]"), ps) == -1
    assert bracket(P("x[2]"), P("p[1]"), ps).is_zero
    assert bracket(P("p[1]"), P("p[2]"), ps).is_zero


def test_bracket_is_antisymmetric_and_leibniz():
    ps = generic_p()
    f, g, h = P("u[1]*p[2]"), P("p[1]^2 + u[2]"), P("p[3]*u[1]")
    assert bracket(f, g, ps) == -bracket(g, f, ps)
    assert bracket(f, g * h, ps) == bracket(f, g, ps) * h + g * bracket(f, h, ps)


def test_bracket_rejects_foreign_symbols():
    with pytest.raises(ForeignSymbolError):
        bracket(P("H[1,1]"), P("p[1]"), darboux())


@pytest.mark.parametrize("ps", [darboux(), jet_ansatz()], ids=["darboux", "jet-ansatz"])
def test_jacobi_sums_vanish(ps):
    for l in range(1, 5):
        for k in range(1, 5):
            for j in range(1, 5):
                first, second = jacobi_defect(ps, l, k, j, 4)
                assert first.is_zero and second.is_zero, (l, k, j)


def test_canonical_generators_bracket_into_the_ideal():
    for n in range(2, 7):
        for m in range(2, 7):
            assert ideal_bracket_residue(n, m).is_zero, (n, m)


def test_linear_ansatz_families():
    system = linear_ansatz_constraints(3, 3)
    assert len(system) == 9 + 4
    assert system[(1, 2, 2)].is_zero
    assert first_family(1, 2) == P("1/2*J[2,1] - J[1,2]")
    for (family, n, m), poly in system:
        assert poly == -system[(family, m, n)]


def test_restriction_decomposition_closed_forms():
    decomposition = restriction_decomposition(5, 5)
    for (l, k), alpha in decomposition.alpha.items():
        assert alpha == alpha_closed_form(l, k)
        assert decomposition.beta[(l, k)] == beta_closed_form(l, k)
    assert decomposition.conditions(5).all_zero


def test_jstar_chain_rule_consistency():
    assert jstar_consistency(5, 4).all_zero


def test_equivalence_small_sweep():
    report = equivalence_J_vs_Delta(3)
    assert report.reduced.all_zero
    assert report.traces == {}


def test_equivalence_is_independent_of_worker_count():
    serial = equivalence_J_vs_Delta(4, workers=1)
    pooled = equivalence_J_vs_Delta(4, workers=2)
    assert list(serial.reduced.items) == list(pooled.reduced.items)
    assert serial.reduced.items == pooled.reduced.items


@pytest.mark.slow
def test_equivalence_through_eleven():
    assert equivalence_J_vs_Delta(11).reduced.all_zero


def test_darboux_system_vanishes_modulo_dkp():
    system = darboux_system(3, 3)
    assert "second(2, 3)" in system.names
    for name, residual in darboux_residuals(system).items():
        assert residual.is_zero, name


def test_printed_darboux_second_family_is_reported():
    assert [finding.code for finding in darboux_findings(3)] == ["darboux-second-family"]
