"""Hochschild 2-cocycles and coboundaries on the big-cell algebra.

Elements of the target module are written as finite expansions over the basis
``p_l``: a dict ``l -> coefficient``. Products with ``p_j`` are re-expanded
through a structure-constant table, so every identity below is checked
coefficient by coefficient, modulo whichever rewriter the caller supplies.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from logic.closure import BigCellClosureReducer
from logic.rewriting import SymbolRewriter
from models.errors import MissingEntryError
from models.polynomial import Polynomial, delta_var, fhess_var, h_to_u, u_jet, var
from models.structure_constants import StructureConstants
from models.symbols import Family, JetKey, Stratum, make_jet

Expansion = Dict[int, Polynomial]


def _clean(vector: Expansion) -> Expansion:
    return {l: c for l, c in sorted(vector.items()) if not c.is_zero}


def add(a: Expansion, b: Expansion, weight: int | Fraction = 1) -> Expansion:
    out = dict(a)
    for l, c in b.items():
        out[l] = out.get(l, Polynomial.zero()) + c.scale(weight)
    return _clean(out)


def times_p(sc: StructureConstants, j: int, vector: Expansion) -> Expansion:
    """``p_j * sum_l v_l p_l`` re-expanded over the basis."""

    out: Expansion = {}
    for l, coefficient in vector.items():
        for n, c in sc.row(j, l).items():
            out[n] = out.get(n, Polynomial.zero()) + coefficient * c
    return _clean(out)


def map_expansion(vector: Expansion, fn: Callable[[Polynomial], Polynomial]) -> Expansion:
    return _clean({l: fn(c) for l, c in vector.items()})


@dataclass(frozen=True)
class CocycleMap:
    """``psi(p_j, p_k)`` for ``1 <= j <= k <= upto``; ``psi`` vanishes on ``p_0``."""

    values: Dict[Tuple[int, int], Expansion] = field(default_factory=dict)
    upto: int = 0

    def value(self, j: int, k: int) -> Expansion:
        if j == 0 or k == 0:
            return {}
        key = (min(j, k), max(j, k))
        if key not in self.values:
            raise MissingEntryError("cocycle", key)
        return self.values[key]

    def on_product(self, sc: StructureConstants, j: int, k: int, m: int) -> Expansion:
        """``psi(p_j p_k, p_m) = sum_l C^l_{jk} psi(p_l, p_m)``."""

        out: Expansion = {}
        for l, c in sc.row(j, k).items():
            out = add(out, {n: c * v for n, v in self.value(l, m).items()})
        return out

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "CocycleMap":
        return CocycleMap({key: map_expansion(v, fn) for key, v in self.values.items()}, self.upto)


@dataclass(frozen=True)
class LinearMapG:
    """``g(p_i) = pi_i``; ``g(p_0) = 0``."""

    values: Dict[int, Expansion] = field(default_factory=dict)

    def value(self, i: int) -> Expansion:
        if i == 0:
            return {}
        if i not in self.values:
            raise MissingEntryError("linear map g", i)
        return self.values[i]

    def on_product(self, sc: StructureConstants, j: int, k: int) -> Expansion:
        out: Expansion = {}
        for l, c in sc.row(j, k).items():
            out = add(out, {n: c * v for n, v in self.value(l).items()})
        return out


def cocycle_defect(
    psi: CocycleMap,
    sc: StructureConstants,
    j: int,
    k: int,
    m: int,
    reducer: Optional[SymbolRewriter] = None,
) -> Expansion:
    """``p_j psi(p_k,p_m) - psi(p_j p_k,p_m) + psi(p_j,p_k p_m) - p_m psi(p_j,p_k)``."""

    defect = times_p(sc, j, psi.value(k, m))
    defect = add(defect, psi.on_product(sc, j, k, m), -1)
    defect = add(defect, psi.on_product(sc, k, m, j))
    defect = add(defect, times_p(sc, m, psi.value(j, k)), -1)
    if reducer is not None:
        defect = map_expansion(defect, reducer.reduce)
    return defect


def coboundary_of(g: LinearMapG, sc: StructureConstants, j: int, k: int) -> Expansion:
    """``p_j g(p_k) + p_k g(p_j) - g(p_j p_k)``."""

    value = add(times_p(sc, j, g.value(k)), times_p(sc, k, g.value(j)))
    return add(value, g.on_product(sc, j, k), -1)


def coboundary_decompose(
    psi: CocycleMap,
    g: LinearMapG,
    sc: StructureConstants,
    j: int,
    k: int,
    reducer: Optional[SymbolRewriter] = None,
) -> Expansion:
    residual = add(psi.value(j, k), coboundary_of(g, sc, j, k), -1)
    if reducer is not None:
        residual = map_expansion(residual, reducer.reduce)
    return residual


def tangent_cocycle(upto: int) -> CocycleMap:
    """``psi(p_j, p_k) = sum_l (Delta[k, j-l] + Delta[j, k-l]) p_l``."""

    values = {}
    for j in range(1, upto + 1):
        for k in range(j, upto + 1):
            values[(j, k)] = _clean(
                {l: delta_var(k, j - l) + delta_var(j, k - l) for l in range(0, j + k)}
            )
    return CocycleMap(values, upto)


def dkp_cocycle(upto: int) -> CocycleMap:
    """The tangent cocycle under the jet ansatz: ``D[u[j-l]; x_k] + D[u[k-l]; x_j]``."""

    values = {}
    for j in range(1, upto + 1):
        for k in range(j, upto + 1):
            values[(j, k)] = _clean(
                {l: u_jet(j - l, k) + u_jet(k - l, j) for l in range(0, j + k)}
            )
    return CocycleMap(values, upto)


def coboundary_cocycle(g: LinearMapG, sc: StructureConstants, upto: int) -> CocycleMap:
    values = {
        (j, k): coboundary_of(g, sc, j, k)
        for j in range(1, upto + 1)
        for k in range(j, upto + 1)
    }
    return CocycleMap(values, upto)


def g_from_tangent(psi: CocycleMap, sc: StructureConstants, upto: int) -> LinearMapG:
    """Solve the unitriangular relations ``psi(p_1, p_k) = (dg)(p_1, p_k)`` for ``pi_{k+1}``.

    ``pi_1`` is a free symbol times ``p_0``.
    """

    values: Dict[int, Expansion] = {1: {0: var(Family.PI, 1)}}
    g = LinearMapG(values)
    for k in range(1, upto):
        value = add(times_p(sc, 1, g.value(k)), times_p(sc, k, g.value(1)))
        value = add(value, psi.value(1, k), -1)
        for l, c in sc.row(1, k).items():
            if l == k + 1:
                continue
            value = add(value, {n: c * v for n, v in g.value(l).items()}, -1)
        values[k + 1] = value
    return g


def random_linear_map(upto: int, seed: int = 0, bound: int = 5) -> LinearMapG:
    rng = random.Random(seed)
    values = {
        i: _clean({l: Polynomial.constant(rng.randint(-bound, bound)) for l in range(0, i + 1)})
        for i in range(1, upto + 1)
    }
    return LinearMapG(values)


def u_structure_constants(upto: int, closure: Optional[BigCellClosureReducer] = None) -> StructureConstants:
    """Big-cell structure constants in normal form, written in ``u``."""

    closure = closure or BigCellClosureReducer()
    table = StructureConstants.closed_form(Stratum.BIG_CELL, upto)
    return table.map(lambda c: h_to_u(closure.reduce(c)))


def u_to_tau(poly: Polynomial) -> Polynomial:
    """``u[k] -> -(1/k) F_{1k}``; jets of ``u`` become higher derivatives of ``F``."""

    def image(key: JetKey) -> Optional[Polynomial]:
        if key.family is not Family.U:
            return None
        k = key.indices[0]
        base = fhess_var(1, k)
        if key.derivatives:
            (base_key,) = base.variables()
            base = Polynomial.variable(make_jet(base_key, key.derivatives))
        return base.scale(Fraction(-1, k))

    return poly.map_variables(image)


def tau_coboundary(j: int, k: int, fmax: int) -> Expansion:
    """The dKP cocycle at ``(j, k)`` in third derivatives of the tau function."""

    if j < 1 or k < 1 or max(j, k) > fmax:
        raise MissingEntryError("tau cocycle", (j, k))
    return map_expansion(dkp_cocycle(max(j, k)).value(j, k), u_to_tau)


def tau_coboundary_direct(j: int, k: int) -> Expansion:
    """The same expansion written out: ``-1/(j-l) F_{1,j-l,k} - 1/(k-l) F_{1,k-l,j}``."""

    out: Expansion = {}
    for l in range(0, j + k):
        value = Polynomial.zero()
        for n, direction in ((j - l, k), (k - l, j)):
            if n >= 1:
                (base_key,) = fhess_var(1, n).variables()
                value = value + Polynomial.variable(make_jet(base_key, (direction,))).scale(Fraction(-1, n))
        out[l] = value
    return _clean(out)


__all__ = [
    "CocycleMap",
    "Expansion",
    "LinearMapG",
    "add",
    "coboundary_cocycle",
    "coboundary_decompose",
    "coboundary_of",
    "cocycle_defect",
    "dkp_cocycle",
    "g_from_tangent",
    "random_linear_map",
    "tangent_cocycle",
    "tau_coboundary",
    "tau_coboundary_direct",
    "times_p",
    "u_structure_constants",
    "u_to_tau",
]
