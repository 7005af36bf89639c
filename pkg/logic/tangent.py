"""Tangent systems, the jet ansatz and the dKP flows.

The tangent system is the first variation of the big-cell closure system:
every ``H[a, b]`` is varied to ``Delta[a, b]``. Oriented as rewrite rules,
the tangent and symmetry items put every ``Delta`` into a normal form linear
in ``Delta[1, s]``; the jet image of that normal form is the dKP rewrite set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from logic.closure import BigCellClosureReducer
from logic.rewriting import DEFAULT_REWRITE_DEPTH, Rule, SymbolRewriter
from models.constraints import ConstraintSystem, Finding, PDESystem
from models.errors import EliminationError, NonLinearDeltaError
from models.polynomial import Polynomial, delta_var, h_to_u, h_var, u_jet, var
from models.structure_constants import bcsc
from models.symbols import Family, JetKey, Stratum, make_symbol
from models.text_format import canonical_string, parse_polynomial

PRINTED_DKP = {
    1: [
        "D[u[1]; x3] - 3/2*D[u[2]; x2] + 3*u[1]*D[u[1]; x1]",
        "2*D[u[2]; x1] - D[u[1]; x2]",
    ],
    2: [
        "D[u[1]; x4] - 2*D[u[3]; x2] + 2*D[u[1]; x1]*u[2] + 2*u[1]*D[u[2]; x1]",
        "D[u[3]; x1] - 1/2*D[u[2]; x2] + u[1]*D[u[1]; x1]",
        "2*D[u[2]; x1] - D[u[1]; x2]",
    ],
}

# Per flow equation: rational combination of tangent items T(j,k,m) and symmetry items S(i,k).
DKP_MULTIPLIERS: Dict[int, List[Tuple[str, Dict[Tuple[str, Tuple[int, ...]], Fraction]]]] = {
    1: [
        ("x3-flow", {("T", (1, 2, 1)): Fraction(3, 2), ("S", (1, 3)): Fraction(1, 2)}),
        ("compatibility", {("S", (1, 2)): Fraction(1)}),
    ],
    2: [
        ("x4-flow", {("T", (1, 1, 3)): Fraction(-2), ("S", (1, 4)): Fraction(-1)}),
        ("x1-u3", {("T", (1, 2, 1)): Fraction(1, 2), ("S", (1, 3)): Fraction(1, 2)}),
        ("compatibility", {("S", (1, 2)): Fraction(1)}),
    ],
}


@dataclass(frozen=True)
class TangentSystem(ConstraintSystem):
    stratum: Stratum = Stratum.BIG_CELL


@dataclass(frozen=True)
class DkpDerivation:
    level: int
    system: PDESystem
    printed: PDESystem
    findings: List[Finding] = field(default_factory=list)


def linearize(poly: Polynomial) -> Polynomial:
    """First variation: ``sum_H d poly / d H[a,b] * Delta[a,b]``."""

    result = Polynomial.zero()
    for key in sorted(poly.variables()):
        if key.family is Family.H and key.is_plain:
            result = result + poly.partial(key) * var(Family.DELTA, *key.indices)
    return result


def tangent_item(j: int, k: int, m: int) -> Polynomial:
    return linearize(bcsc(j, k, m))


def tangent_template(j: int, k: int, m: int) -> Polynomial:
    """The tangent item written out directly in ``Delta`` and ``H``."""

    H, D = h_var, delta_var
    value = D(j + k, m) - D(j, m + k) - D(k, m + j)
    for l in range(1, j):
        value = value + H(k, j - l) * D(l, m) + D(k, j - l) * H(l, m)
    for l in range(1, k):
        value = value + H(j, k - l) * D(l, m) + D(j, k - l) * H(l, m)
    for l in range(1, m):
        value = value - H(k, m - l) * D(j, l) - D(k, m - l) * H(j, l)
    return value


def tangent_system(jmax: int, kmax: int, mmax: int) -> TangentSystem:
    items = {
        (j, k, m): tangent_item(j, k, m)
        for j in range(1, jmax + 1)
        for k in range(1, kmax + 1)
        for m in range(1, mmax + 1)
    }
    return TangentSystem(label="tangent", items=items)


def symmetry_item(i: int, k: int) -> Polynomial:
    return delta_var(i, k).scale(k) - delta_var(k, i).scale(i)


def symmetry_relations(imax: int, kmax: int) -> ConstraintSystem:
    items = {
        (i, k): symmetry_item(i, k) for i in range(1, imax + 1) for k in range(1, kmax + 1)
    }
    return ConstraintSystem(label="symmetry", items=items)


class TangentReducer(SymbolRewriter):
    """Normal forms of ``Delta[a, b]`` linear in ``Delta[1, s]`` with ``H[1, .]`` coefficients."""

    name = "tangent"

    def __init__(
        self,
        closure: Optional[BigCellClosureReducer] = None,
        max_depth: int = DEFAULT_REWRITE_DEPTH,
    ) -> None:
        super().__init__(max_depth=max_depth)
        self.closure = closure or BigCellClosureReducer(max_depth=max_depth)

    def rule(self, key: JetKey) -> Optional[Rule]:
        if not key.is_plain:
            return None
        if key.family is Family.H:
            normal = self.closure.normal_form_of(key)
            return None if normal is None else (normal, self.closure.label_of(key))
        if key.family is not Family.DELTA:
            return None
        a, b = key.indices
        if a > b:
            return delta_var(b, a).scale(Fraction(a, b)), f"symmetry({b},{a})"
        if a >= 2:
            return self.solve_for(tangent_item(1, a - 1, b), key), f"tangent(1,{a - 1},{b})"
        return None


def _delta_degree(mono) -> int:
    return sum(exp for key, exp in mono if key.family is Family.DELTA)


def jet_image(poly: Polynomial) -> Polynomial:
    """``Delta[i, k] -> D[u[k]; x_i]`` and ``H[1, k] -> u[k]``."""

    def image(key: JetKey) -> Optional[Polynomial]:
        if key.family is Family.DELTA and key.is_plain:
            i, k = key.indices
            return u_jet(k, i)
        return None

    return h_to_u(poly.map_variables(image))


def apply_jet_ansatz(
    system: ConstraintSystem, closure: Optional[BigCellClosureReducer] = None
) -> PDESystem:
    """Jet image of a system linear in ``Delta``; ``H`` coefficients go to normal form first."""

    closure = closure or BigCellClosureReducer()
    equations: List[Polynomial] = []
    names: List[str] = []
    for indices, poly in system.items.items():
        for mono, _ in poly.items():
            if _delta_degree(mono) > 1:
                raise NonLinearDeltaError(
                    f"{system.label}{indices}: Delta occurs non-linearly in {canonical_string(poly)}"
                )
        equations.append(jet_image(closure.reduce(poly)))
        names.append(f"{system.label}{tuple(indices)}")
    return PDESystem(label=f"{system.label}:jets", equations=equations, names=names)


class DkpRewriter(SymbolRewriter):
    """Rewrite every first-order jet ``D[u[b]; ..., x_a]`` with ``a >= 2`` into ``x_1``-jets.

    The largest direction ``a >= 2`` is replaced by the jet image of the tangent
    normal form of ``Delta[a, b]``; the remaining directions are applied as total
    derivatives and the result is reduced again.
    """

    name = "dkp"

    def __init__(self, tangent: Optional[TangentReducer] = None, max_depth: int = DEFAULT_REWRITE_DEPTH) -> None:
        super().__init__(max_depth=max_depth)
        self.tangent = tangent or TangentReducer(max_depth=max_depth)

    def rule(self, key: JetKey) -> Optional[Rule]:
        if key.family is not Family.U or key.is_plain:
            return None
        high = [d for d in key.derivatives if d >= 2]
        if not high:
            return None
        a = max(high)
        rest = list(key.derivatives)
        rest.remove(a)
        b = key.indices[0]
        normal = self.tangent.normal_form_of(make_symbol(Family.DELTA, a, b))
        if normal is None:
            normal = delta_var(a, b)
        replacement = jet_image(normal)
        for direction in rest:
            replacement = replacement.formal_derivative(direction)
        return replacement, f"dkp(x{a})"


def _combination(terms: Mapping[Tuple[str, Tuple[int, ...]], Fraction]) -> Polynomial:
    total = Polynomial.zero()
    for (kind, indices), weight in terms.items():
        item = tangent_item(*indices) if kind == "T" else symmetry_item(*indices)
        total = total + item.scale(weight)
    return total


def _multiplier_names(terms: Mapping[Tuple[str, Tuple[int, ...]], Fraction]) -> Dict[str, Fraction]:
    return {f"{kind}{indices}": weight for (kind, indices), weight in terms.items()}


def derive_dkp_flow(level: int, closure: Optional[BigCellClosureReducer] = None) -> DkpDerivation:
    """Combine tangent and symmetry items into the dKP equations at ``level`` 1 or 2."""

    if level not in DKP_MULTIPLIERS:
        raise EliminationError(f"no dKP flow at level {level}")
    closure = closure or BigCellClosureReducer()
    equations: List[Polynomial] = []
    names: List[str] = []
    multipliers: List[Dict[str, Fraction]] = []
    for name, terms in DKP_MULTIPLIERS[level]:
        combined = closure.reduce(_combination(terms))
        if combined.is_zero or any(_delta_degree(mono) != 1 for mono, _ in combined.items()):
            raise EliminationError(f"{name}: combination is not a linear Delta relation", residual=combined)
        equations.append(jet_image(combined))
        names.append(name)
        multipliers.append(_multiplier_names(terms))
    printed_eqs = [parse_polynomial(text) for text in PRINTED_DKP[level]]
    system = PDESystem(label=f"dkp-{level}", equations=equations, names=names, multipliers=multipliers)
    printed = PDESystem(label=f"dkp-{level}:printed", equations=printed_eqs, names=list(names))
    findings = [
        Finding(
            code=f"dkp-{level}:{name}",
            message=f"printed {name} equation differs from the combination of tangent items",
            printed=canonical_string(p),
            derived=canonical_string(d),
        )
        for name, d, p in zip(names, equations, printed_eqs)
        if not (d - p).is_zero
    ]
    return DkpDerivation(level=level, system=system, printed=printed, findings=findings)


def dkp_residuals(level: int, rewriter: Optional[DkpRewriter] = None) -> Dict[str, Polynomial]:
    """Each derived flow equation reduced by the dKP rewrite set; all vanish."""

    rewriter = rewriter or DkpRewriter()
    derivation = derive_dkp_flow(level, rewriter.tangent.closure)
    return {name: rewriter.reduce(eq) for name, eq in derivation.system.named().items()}


__all__ = [
    "DkpDerivation",
    "DkpRewriter",
    "PRINTED_DKP",
    "TangentReducer",
    "TangentSystem",
    "apply_jet_ansatz",
    "derive_dkp_flow",
    "dkp_residuals",
    "jet_image",
    "linearize",
    "symmetry_item",
    "symmetry_relations",
    "tangent_item",
    "tangent_system",
    "tangent_template",
]
