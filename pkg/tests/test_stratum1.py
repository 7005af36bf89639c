"""The x4-flows of the first stratum from its coisotropy condition."""

from pathlib import Path

import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.stratum1 import (
    PRINTED_FLOWS,
    integrate_x2,
    reduce_w,
    stratum1_coisotropy,
    substitute_field,
)
from models.errors import EliminationError
from models.symbols import Family, make_symbol
from models.text_format import parse_polynomial


def P(text: str):
    return parse_polynomial(text)


@pytest.fixture(scope="module")
def hierarchy():
    return stratum1_coisotropy()


def test_generator_coefficients_are_solved(hierarchy):
    assert hierarchy.v2 == P("2/3*mu[4]")
    assert hierarchy.v1 == P("2/3*mu[3] - 1/9*mu[4]^2 + 4/9*w[4]")


def test_coefficient_equations_vanish_after_elimination(hierarchy):
    assert set(hierarchy.residuals) == {"p2^2*p3", "p2^3"}
    for name, residual in hierarchy.residuals.items():
        assert residual.is_zero, name


def test_system_layout(hierarchy):
    assert hierarchy.system.names == ["mu4", "mu3", "mu2", "mu1", "mu0", "v2", "v1", "w"]
    assert sorted(hierarchy.flows) == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("a", [0, 2])
def test_flows_match_printed_with_v_symbolic(hierarchy, a):
    assert hierarchy.flows[a] == P(PRINTED_FLOWS[a])


def test_printed_v1_is_reported(hierarchy):
    codes = [finding.code for finding in hierarchy.findings]
    assert "stratum1:v1" in codes
    assert "stratum1:mu0" not in codes
    assert "stratum1:mu2" not in codes


def test_gauge_fixes_v0():
    gauged = stratum1_coisotropy(gauge_v0=P("0"))
    v0 = make_symbol(Family.V, 0)
    for flow in gauged.flows.values():
        assert all(key.base != v0 for key in flow.variables())


def test_integrate_x2():
    assert integrate_x2(P("mu[4]*D[mu[4]; x2]")) == P("1/2*mu[4]^2")
    assert integrate_x2(P("3*D[mu[4]; x3] - D[mu[3]; x2]")) == P("3*w[4] - mu[3]")
    with pytest.raises(EliminationError):
        integrate_x2(P("mu[3]*D[mu[4]; x2]"))


def test_w_jets_reduce_to_mu4():
    assert reduce_w(P("D[w[4]; x2,x3]")) == P("D[mu[4]; x3,x3]")
    assert reduce_w(P("D[w[4]; x3]")) == P("D[w[4]; x3]")


def test_substitute_field_differentiates_the_value():
    v1 = make_symbol(Family.V, 1)
    result = substitute_field(P("D[v[1]; x2] + v[1]"), v1, P("mu[4]^2"))
    assert result == P("2*mu[4]*D[mu[4]; x2] + mu[4]^2")
