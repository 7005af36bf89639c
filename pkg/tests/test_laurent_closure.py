"""Laurent windows, closure decomposition and the closure rewrite engines."""

from pathlib import Path
from random import Random

import sys

import pytest
import sympy

sys.path.append(str(Path(__file__).resolve().parents[1]))

from logic.closure import (
    BigCellClosureReducer,
    closure_constraints,
    closure_decompose,
    reducer_for,
    template_constraints,
    verify_h_symmetry,
)
from models.errors import TruncationError
from models.laurent import LaurentSeries, StratumBasis, series_mul
from models.polynomial import Polynomial, h_var
from models.structure_constants import StructureConstants, bcsc, big_cell_C, sigma1_constraint
from models.symbols import Family, Stratum, make_symbol
from models.text_format import parse_polynomial


def test_product_window_is_the_exact_part_only():
    basis = StratumBasis(Stratum.BIG_CELL, 6)
    product = series_mul(basis.element(1), basis.element(1))
    assert product.window == (-5, 2)
    assert product.coefficient(3).is_zero
    assert product.coefficient(0) == parse_polynomial("2*H[1,1]")
    with pytest.raises(TruncationError):
        product.coefficient(-6)


def test_empty_window_is_rejected():
    with pytest.raises(TruncationError):
        LaurentSeries(lo=0, hi=-1)


def test_first_stratum_has_no_p1():
    basis = StratumBasis(Stratum.SIGMA1, 5)
    assert basis.indices(4) == [0, 2, 3, 4]
    with pytest.raises(TruncationError):
        basis.element(1)
    assert basis.element(2).coefficient(1) == h_var(2, -1, Stratum.SIGMA1)


def test_decomposition_rows_are_the_closed_form_structure_constants():
    basis = StratumBasis(Stratum.BIG_CELL, 9)
    table = StructureConstants.closed_form(Stratum.BIG_CELL, 3)
    for j in range(1, 4):
        for k in range(j, 4):
            assert closure_decompose(basis, j, k).row == table.row(j, k)


def test_big_cell_closure_matches_closed_form():
    basis = StratumBasis(Stratum.BIG_CELL, 10)
    derived = closure_constraints(basis, 4, 4, 4)
    template = template_constraints(Stratum.BIG_CELL, 4, 4, 4)
    assert len(derived) == 64
    assert derived.items == template.items


def test_first_stratum_closure_matches_closed_form():
    basis = StratumBasis(Stratum.SIGMA1, 8)
    derived = closure_constraints(basis, 3, 3, 2)
    template = template_constraints(Stratum.SIGMA1, 3, 3, 2)
    assert set(derived.items) == {(j, k, m) for j in (2, 3) for k in (2, 3) for m in (-1, 1, 2)}
    assert derived.items == template.items


def test_parallel_sweep_keeps_item_order():
    basis = StratumBasis(Stratum.BIG_CELL, 8)
    serial = closure_constraints(basis, 3, 3, 3, workers=1)
    pooled = closure_constraints(basis, 3, 3, 3, workers=2)
    assert list(serial.items) == list(pooled.items)
    assert serial.items == pooled.items


def test_truncation_order_too_small():
    with pytest.raises(TruncationError):
        closure_decompose(StratumBasis(Stratum.BIG_CELL, 2), 2, 1)
    with pytest.raises(TruncationError):
        closure_constraints(StratumBasis(Stratum.BIG_CELL, 5), 2, 2, 4)


def _sympy_residual(j: int, k: int, m: int, order: int, seed: int):
    """z^-m coefficient of p_j p_k - sum_l C^l_jk p_l and the closure item, at random integer H."""

    rng = Random(seed)
    z = sympy.Symbol("z")
    values = {
        make_symbol(Family.H, a, b): rng.randint(-5, 5)
        for a in range(1, j + k + 1)
        for b in range(1, order + 1)
    }

    def element(i: int):
        if i == 0:
            return sympy.Integer(1)
        return z**i + sum(values[make_symbol(Family.H, i, b)] * z ** (-b) for b in range(1, order + 1))

    combination = sum(
        sympy.Rational(str(big_cell_C(j, k, l).evaluate(values))) * element(l) for l in range(0, j + k + 1)
    )
    shifted = sympy.expand((element(j) * element(k) - combination) * z ** (2 * order))
    residual = sympy.Poly(shifted, z).coeff_monomial(z ** (2 * order - m))
    return residual, bcsc(j, k, m).evaluate(values)


@pytest.mark.parametrize("j,k,m,seed", [(1, 1, 3, 0), (2, 3, 2, 1), (3, 2, 4, 2)])
def test_closure_items_agree_with_sympy_series(j, k, m, seed):
    residual, item = _sympy_residual(j, k, m, order=8, seed=seed)
    assert residual == -sympy.Rational(str(item))


def test_big_cell_reducer_normal_forms():
    reducer = BigCellClosureReducer()
    assert reducer.reduce(h_var(2, 1)) == parse_polynomial("2*H[1,2]")
    assert reducer.reduce(h_var(2, 2)) == parse_polynomial("2*H[1,3] + H[1,1]^2")
    for j in range(1, 4):
        for k in range(1, 4):
            for m in range(1, 4):
                assert reducer.reduce(bcsc(j, k, m)).is_zero


def test_h_symmetry_holds_modulo_closure():
    assert verify_h_symmetry(4).all_zero


def test_first_stratum_reducer_solves_its_defining_items():
    reducer = reducer_for(Stratum.SIGMA1)
    for k, l in [(2, -1), (2, 1), (3, 2)]:
        assert reducer.reduce(sigma1_constraint(2, k, l)).is_zero
    assert reducer.reduce(h_var(2, 3, Stratum.SIGMA1)) == h_var(2, 3, Stratum.SIGMA1)
    assert reducer.reduce(Polynomial.constant(5)) == 5


def _random_series(rng: Random, lo: int, hi: int) -> LaurentSeries:
    pool = [parse_polynomial(text) for text in ("H[1,1]", "u[2]", "p[1]", "D[u[1]; x2]", "1")]
    coeffs = {
        d: Polynomial.constant(rng.randint(-3, 3)) * rng.choice(pool) + rng.randint(-2, 2)
        for d in range(lo, hi + 1)
    }
    coeffs[hi] = Polynomial.constant(1)
    return LaurentSeries(lo, hi, coeffs)


@pytest.mark.parametrize("seed", range(5))
def test_series_product_matches_the_cauchy_sum_on_its_window(seed):
    rng = Random(seed)
    a = _random_series(rng, -rng.randint(0, 5), rng.randint(0, 3))
    b = _random_series(rng, -rng.randint(0, 5), rng.randint(0, 3))
    product = series_mul(a, b)
    assert product.window == (max(a.lo + b.hi, a.hi + b.lo), a.hi + b.hi)
    for d in product.degrees():
        expected = Polynomial.zero()
        for i in range(d - b.hi, a.hi + 1):
            expected = expected + a.coefficient(i) * b.coefficient(d - i)
        assert product.coefficient(d) == expected
    with pytest.raises(TruncationError):
        product.coefficient(product.lo - 1)


@pytest.mark.parametrize("seed", range(5))
def test_series_product_is_commutative_and_associative(seed):
    rng = Random(100 + seed)
    a, b, c = (_random_series(rng, -rng.randint(1, 4), rng.randint(0, 2)) for _ in range(3))
    assert series_mul(a, b) == series_mul(b, a)
    left = series_mul(series_mul(a, b), c)
    right = series_mul(a, series_mul(b, c))
    assert left.hi == right.hi
    shared = max(left.lo, right.lo)
    assert left.restrict(shared) == right.restrict(shared)


def test_single_coefficient_windows():
    x, y = parse_polynomial("u[1]"), parse_polynomial("H[2,1]")
    a = LaurentSeries(3, 3, {3: x})
    b = LaurentSeries(-2, -2, {-2: y})
    product = series_mul(a, b)
    assert product.window == (1, 1)
    assert product.coefficient(1) == x * y
    wide = LaurentSeries(-1, 1, {1: Polynomial.constant(1), 0: x, -1: y})
    narrow = series_mul(wide, LaurentSeries(0, 0, {0: Polynomial.constant(2)}))
    assert narrow.window == (1, 1)
    assert narrow.coefficient(1) == 2
    with pytest.raises(TruncationError):
        narrow.coefficient(0)
