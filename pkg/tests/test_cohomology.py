"""Cocycles, coboundaries and the solved linear map on the big-cell algebra."""

from pathlib import Path

import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.cohomology import (
    CocycleMap,
    LinearMapG,
    add,
    coboundary_cocycle,
    coboundary_decompose,
    cocycle_defect,
    dkp_cocycle,
    g_from_tangent,
    random_linear_map,
    tangent_cocycle,
    tau_coboundary,
    tau_coboundary_direct,
    u_structure_constants,
)
from logic.tangent import DkpRewriter, TangentReducer
from models.errors import MissingEntryError
from models.polynomial import var
from models.structure_constants import StructureConstants
from models.symbols import Family, Stratum


@pytest.fixture(scope="module")
def u_table():
    return u_structure_constants(6)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_coboundaries_of_random_maps_are_cocycles(u_table, seed):
    g = random_linear_map(12, seed=seed)
    psi = coboundary_cocycle(g, u_table, 6)
    for j in range(1, 4):
        for k in range(1, 4):
            for m in range(1, 4):
                assert cocycle_defect(psi, u_table, j, k, m) == {}, (j, k, m)


def test_dkp_cocycle_vanishes_modulo_flows():
    sc = u_structure_constants(4)
    rewriter = DkpRewriter()
    psi = dkp_cocycle(4)
    for j in range(1, 3):
        for k in range(1, 3):
            for m in range(1, 3):
                assert cocycle_defect(psi, sc, j, k, m, rewriter) == {}, (j, k, m)


def test_tangent_cocycle_is_a_coboundary():
    tangent = TangentReducer()
    sc = StructureConstants.closed_form(Stratum.BIG_CELL, 6).map(tangent.closure.reduce)
    psi = tangent_cocycle(6)
    g = g_from_tangent(psi, sc, 6)
    assert g.value(1) == {0: var(Family.PI, 1)}
    for j in range(1, 4):
        for k in range(j, 4):
            assert coboundary_decompose(psi, g, sc, j, k, tangent) == {}, (j, k)


def test_tau_cocycle_matches_written_out_form():
    for j in range(1, 4):
        for k in range(1, 4):
            assert add(tau_coboundary(j, k, 3), tau_coboundary_direct(j, k), -1) == {}


def test_random_maps_are_seeded():
    assert random_linear_map(5, seed=3) == random_linear_map(5, seed=3)
    assert random_linear_map(5, seed=3).value(0) == {}


def test_lookups_outside_the_table_raise():
    with pytest.raises(MissingEntryError):
        CocycleMap({}, 0).value(1, 2)
    with pytest.raises(MissingEntryError):
        LinearMapG({}).value(3)
    with pytest.raises(MissingEntryError):
        tau_coboundary(4, 1, 3)
    with pytest.raises(MissingEntryError):
        StructureConstants.closed_form(Stratum.BIG_CELL, 2).row(1, 3)


def test_structure_constants_in_u(u_table):
    assert u_table.coefficient(1, 1, 0) == var(Family.U, 1).scale(2)
    assert u_table.coefficient(1, 2, 0) == var(Family.U, 2).scale(3)
