"""Closure of a stratum basis under multiplication.

``closure_decompose`` multiplies two basis series, peels off the structure
constants from the top degree down and returns whatever is left at the exact
degrees with no basis element as expected-zero residuals. The two reducers
orient those residuals into rewrite rules so that every ``H`` symbol has a
normal form in the free parameters of its stratum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from logic.rewriting import DEFAULT_REWRITE_DEPTH, Rule, SymbolRewriter
from models.constraints import ConstraintSystem
from models.errors import TruncationError
from models.laurent import LaurentSeries, StratumBasis, series_mul
from models.polynomial import Polynomial, h_var
from models.structure_constants import bcsc, closure_template, sigma1_constraint
from models.symbols import Family, JetKey, Stratum
from tools.parallel import ordered_map

Indices = Tuple[int, ...]


@dataclass(frozen=True)
class ClosureDecomposition:
    """Structure-constant row and residuals of ``p_j * p_k``.

    Residual labels: ``m`` for the coefficient of ``z^-m``; on the first
    stratum ``-1`` labels the coefficient of ``z^1``.
    """

    stratum: Stratum
    j: int
    k: int
    row: Dict[int, Polynomial] = field(default_factory=dict)
    residuals: Dict[int, Polynomial] = field(default_factory=dict)


def exact_depth(basis: StratumBasis, j: int, k: int) -> int:
    """Largest ``m`` such that the ``z^-m`` coefficient of ``p_j * p_k`` is exact."""

    return basis.order - max(j, k)


def closure_decompose(basis: StratumBasis, j: int, k: int) -> ClosureDecomposition:
    depth = exact_depth(basis, j, k)
    if depth < 1:
        raise TruncationError(
            f"order {basis.order} leaves no exact negative degree for p[{j}]*p[{k}]"
        )
    remainder: LaurentSeries = series_mul(basis.element(j), basis.element(k))
    row: Dict[int, Polynomial] = {}
    residuals: Dict[int, Polynomial] = {}
    for degree in range(j + k, -1, -1):
        coefficient = remainder.coefficient(degree)
        if not basis.is_index(degree):
            residuals[-1] = coefficient
            continue
        if coefficient.is_zero:
            continue
        row[degree] = coefficient
        remainder = remainder - basis.element(degree).scale(coefficient)
    for m in range(1, depth + 1):
        residuals[m] = remainder.coefficient(-m)
    return ClosureDecomposition(basis.stratum, j, k, row, residuals)


def closure_item(basis: StratumBasis, j: int, k: int, m: int) -> Polynomial:
    return closure_decompose(basis, j, k).residuals[m]


def constraint_labels(stratum: Stratum, mmax: int) -> List[int]:
    labels = list(range(1, mmax + 1))
    return [-1] + labels if stratum is Stratum.SIGMA1 else labels


def index_range(stratum: Stratum, upper: int) -> List[int]:
    start = 2 if stratum is Stratum.SIGMA1 else 1
    return list(range(start, upper + 1))


def _residual_row(args: Tuple[StratumBasis, int, int, List[int]]) -> List[Tuple[Indices, Polynomial]]:
    basis, j, k, labels = args
    decomposition = closure_decompose(basis, j, k)
    out = []
    for m in labels:
        if m not in decomposition.residuals:
            raise TruncationError(
                f"order {basis.order} too small for item ({j},{k},{m}); "
                f"need at least {m + max(j, k)}"
            )
        out.append(((j, k, m), decomposition.residuals[m]))
    return out


def closure_constraints(
    basis: StratumBasis, jmax: int, kmax: int, mmax: int, workers: int = 1
) -> ConstraintSystem:
    """Every residual ``(j, k, m)`` in the swept box, monic-cleared."""

    labels = constraint_labels(basis.stratum, mmax)
    tasks = [
        (basis, j, k, labels)
        for j in index_range(basis.stratum, jmax)
        for k in index_range(basis.stratum, kmax)
    ]
    items: Dict[Indices, Polynomial] = {}
    for chunk in ordered_map(_residual_row, tasks, workers=workers):
        items.update(chunk)
    return ConstraintSystem(label=f"closure:{basis.stratum.value}", items=items).normalized()


def template_constraints(stratum: Stratum, jmax: int, kmax: int, mmax: int) -> ConstraintSystem:
    """The closed-form constraints over the same box, monic-cleared."""

    items = {
        (j, k, m): closure_template(stratum, j, k, m)
        for j in index_range(stratum, jmax)
        for k in index_range(stratum, kmax)
        for m in constraint_labels(stratum, mmax)
    }
    return ConstraintSystem(label=f"template:{stratum.value}", items=items).normalized()


class BigCellClosureReducer(SymbolRewriter):
    """``H[a, b]`` with ``a >= 2`` solved from the closure item ``(1, a-1, b)``.

    Normal forms are polynomials in ``H[1, .]`` only.
    """

    name = "big-cell-closure"

    def rule(self, key: JetKey) -> Optional[Rule]:
        if key.family is not Family.H or not key.is_plain:
            return None
        a, b = key.indices
        if a < 2 or b < 1:
            return None
        return self.solve_for(bcsc(1, a - 1, b), key), f"closure(1,{a - 1},{b})"


class Sigma1Reducer(SymbolRewriter):
    """First-stratum normal forms in ``H[2, .]``, ``H[3, -1]``, ``H[3, 1]``, ``H[3, 3]``.

    ``H[n, l]`` with ``n >= 4`` comes from the item ``(2, n-2, l)``; ``H[3, k]`` for
    ``k = 2`` or ``k >= 4`` from the difference of items ``(3, 3, k-3)`` and
    ``(2, 4, k-3)``, in which ``H[6, k-3]`` cancels.
    """

    name = "sigma1-closure"

    def rule(self, key: JetKey) -> Optional[Rule]:
        if key.family is not Family.H or not key.is_plain:
            return None
        n, l = key.indices
        if n >= 4:
            return self.solve_for(sigma1_constraint(2, n - 2, l), key), f"sigma1(2,{n - 2},{l})"
        if n == 3 and (l == 2 or l >= 4):
            equation = sigma1_constraint(3, 3, l - 3) - sigma1_constraint(2, 4, l - 3)
            return self.solve_for(equation, key), f"sigma1(3,3,{l - 3})-(2,4,{l - 3})"
        return None


def reducer_for(stratum: Stratum, max_depth: int = DEFAULT_REWRITE_DEPTH) -> SymbolRewriter:
    if stratum is Stratum.SIGMA1:
        return Sigma1Reducer(max_depth=max_depth)
    return BigCellClosureReducer(max_depth=max_depth)


def verify_h_symmetry(nmax: int, reducer: Optional[SymbolRewriter] = None) -> ConstraintSystem:
    """``n H[i, n] - i H[n, i]`` reduced modulo closure, for ``1 <= i, n <= nmax``."""

    reducer = reducer or BigCellClosureReducer()
    items = {}
    for i in range(1, nmax + 1):
        for n in range(1, nmax + 1):
            relation = h_var(i, n).scale(n) - h_var(n, i).scale(i)
            items[(i, n)] = reducer.reduce(relation)
    return ConstraintSystem(label="h-symmetry", items=items)


def reduced_closure(
    system: ConstraintSystem, reducer: SymbolRewriter, indices: Iterable[Indices] = ()
) -> ConstraintSystem:
    """Reduce every item of a closure system; all must vanish for a consistent reducer."""

    keys = list(indices) or list(system.items)
    return ConstraintSystem(
        label=f"{system.label}:reduced",
        items={key: reducer.reduce(system.items[key]) for key in keys},
    )


__all__ = [
    "BigCellClosureReducer",
    "ClosureDecomposition",
    "Sigma1Reducer",
    "closure_constraints",
    "closure_decompose",
    "closure_item",
    "constraint_labels",
    "exact_depth",
    "index_range",
    "reduced_closure",
    "reducer_for",
    "template_constraints",
    "verify_h_symmetry",
]
