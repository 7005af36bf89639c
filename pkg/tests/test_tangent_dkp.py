"""Linearization, the tangent rewrite engine and the dKP flows."""

from fractions import Fraction
from pathlib import Path

import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.tangent import (
    DkpRewriter,
    TangentReducer,
    apply_jet_ansatz,
    derive_dkp_flow,
    dkp_residuals,
    linearize,
    symmetry_relations,
    tangent_item,
    tangent_system,
    tangent_template,
)
from models.constraints import ConstraintSystem
from models.errors import EliminationError, NonLinearDeltaError
from models.polynomial import delta_var, u_jet
from models.text_format import canonical_string, parse_polynomial


def test_linearize_is_the_first_variation():
    assert linearize(parse_polynomial("H[1,1]^2 - H[2,2]")) == parse_polynomial(
        "2*H[1,1]*Delta[1,1] - Delta[2,2]"
    )
    assert linearize(parse_polynomial("u[1] + 3")).is_zero


def test_tangent_items_match_written_out_form():
    for j in range(1, 4):
        for k in range(1, 4):
            for m in range(1, 4):
                assert tangent_item(j, k, m) == tangent_template(j, k, m)


def test_tangent_reducer_normal_forms():
    reducer = TangentReducer()
    assert reducer.reduce(delta_var(2, 1)) == parse_polynomial("2*Delta[1,2]")
    assert reducer.reduce(delta_var(2, 2)) == parse_polynomial("2*Delta[1,3] + 2*H[1,1]*Delta[1,1]")
    assert reducer.reduce(delta_var(1, 5)) == delta_var(1, 5)


def test_tangent_and_symmetry_relations_reduce_to_zero():
    reducer = TangentReducer()
    assert tangent_system(3, 3, 3).map(reducer.reduce).all_zero
    assert symmetry_relations(4, 4).map(reducer.reduce).all_zero


def test_dkp_level_one_reproduces_printed_equations():
    derivation = derive_dkp_flow(1)
    assert derivation.system.names == ["x3-flow", "compatibility"]
    assert derivation.findings == []
    assert [canonical_string(eq) for eq in derivation.system] == [
        canonical_string(eq) for eq in derivation.printed
    ]
    assert derivation.system.equations[0] == parse_polynomial(
        "D[u[1]; x3] - 3/2*D[u[2]; x2] + 3*u[1]*D[u[1]; x1]"
    )
    assert derivation.system.multipliers[0] == {"T(1, 2, 1)": Fraction(3, 2), "S(1, 3)": Fraction(1, 2)}


def test_dkp_level_two_reports_the_x4_coefficient():
    derivation = derive_dkp_flow(2)
    assert derivation.system.names == ["x4-flow", "x1-u3", "compatibility"]
    assert derivation.system.equations[0] == parse_polynomial(
        "D[u[1]; x4] - 2*D[u[3]; x2] + 4*u[2]*D[u[1]; x1] + 4*u[1]*D[u[2]; x1]"
    )
    assert [finding.code for finding in derivation.findings] == ["dkp-2:x4-flow"]


def test_no_dkp_flow_beyond_level_two():
    with pytest.raises(EliminationError):
        derive_dkp_flow(3)


@pytest.mark.parametrize("level", [1, 2])
def test_dkp_flows_vanish_modulo_rewrite_set(level):
    for name, residual in dkp_residuals(level).items():
        assert residual.is_zero, name


def test_dkp_rewriter_moves_jets_to_x1():
    rewriter = DkpRewriter()
    assert rewriter.reduce(u_jet(1, 2)) == parse_polynomial("2*D[u[2]; x1]")
    assert rewriter.reduce(u_jet(3, 1)) == u_jet(3, 1)


def test_jet_ansatz_requires_linear_delta():
    system = ConstraintSystem(label="bad", items={(1,): parse_polynomial("Delta[1,1]^2")})
    with pytest.raises(NonLinearDeltaError):
        apply_jet_ansatz(system)


def test_jet_ansatz_of_symmetry_relations():
    pde = apply_jet_ansatz(symmetry_relations(1, 2))
    assert pde.names == ["symmetry(1, 1)", "symmetry(1, 2)"]
    assert pde.equations[0].is_zero
    assert pde.equations[1] == parse_polynomial("2*D[u[2]; x1] - D[u[1]; x2]")
