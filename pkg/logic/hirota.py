"""Dispersionless Hirota-Miwa equations and the tau-function substitution.

With ``H[i, m] = -(1/m) Fhess[i, m]`` every big-cell closure constraint becomes
a quadratic equation in second derivatives of one potential F. Two renderings
of that equation are kept: ``derived`` is the substitution itself, ``printed``
is the displayed formula, whose last sum carries ``1/(i(m-l))`` instead of
``1/(l(m-l))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from models.constraints import ConstraintSystem, Finding, proportionality_factor
from models.polynomial import Polynomial, fhess_var, jet
from models.structure_constants import bcsc
from models.symbols import Family, JetKey
from models.text_format import canonical_string
from tools.parallel import ordered_map

VARIANTS = ("derived", "printed")

Indices = Tuple[int, int, int]


def hirota_equation(i: int, k: int, m: int, variant: str = "derived") -> Polynomial:
    if variant not in VARIANTS:
        raise ValueError(f"unknown Hirota variant '{variant}'; expected one of {VARIANTS}")
    if min(i, k, m) < 1:
        raise ValueError(f"Hirota indices start at 1, got {(i, k, m)}")
    F = fhess_var
    value = (
        F(i + k, m).scale(Fraction(-1, m))
        + F(i, k + m).scale(Fraction(1, m + k))
        + F(k, i + m).scale(Fraction(1, i + m))
    )
    for l in range(1, i):
        value = value + (F(k, i - l) * F(l, m)).scale(Fraction(1, m * (i - l)))
    for l in range(1, k):
        value = value + (F(i, k - l) * F(l, m)).scale(Fraction(1, m * (k - l)))
    for l in range(1, m):
        weight = Fraction(1, l * (m - l)) if variant == "derived" else Fraction(1, i * (m - l))
        value = value - (F(k, m - l) * F(i, l)).scale(weight)
    return value


def tau_substitute(poly: Polynomial) -> Polynomial:
    """``H[a, b] -> -(1/b) Fhess[a, b]`` on plain big-cell symbols."""

    def image(key: JetKey) -> Optional[Polynomial]:
        if key.family is Family.H and key.is_plain:
            a, b = key.indices
            return fhess_var(a, b).scale(Fraction(-1, b))
        return None

    return poly.map_variables(image)


@dataclass(frozen=True)
class TauItem:
    indices: Indices
    substituted: Polynomial
    residual: Polynomial
    factor: Optional[Fraction]
    printed_factor: Optional[Fraction]


@dataclass(frozen=True)
class TauSubstitutionReport:
    items: List[TauItem] = field(default_factory=list)
    findings: List[Finding] = field(default_factory=list)

    def residuals(self) -> ConstraintSystem:
        return ConstraintSystem(
            label="tau-substitution", items={item.indices: item.residual for item in self.items}
        )

    def factors(self) -> Dict[Indices, Optional[Fraction]]:
        return {item.indices: item.factor for item in self.items}


def _factor(substituted: Polynomial, target: Polynomial) -> Optional[Fraction]:
    # Both sides vanishing identically counts as agreement with factor 1.
    if substituted.is_zero and target.is_zero:
        return Fraction(1)
    if target.is_zero:
        return None
    factor = proportionality_factor(substituted, target)
    # A vanishing substitution against a nonzero equation is a mismatch, not factor 0.
    return None if factor == 0 else factor


def _tau_item(indices: Indices) -> TauItem:
    j, k, m = indices
    substituted = tau_substitute(bcsc(j, k, m))
    derived = hirota_equation(j, k, m, "derived")
    factor = _factor(substituted, derived)
    residual = substituted - derived.scale(factor) if factor is not None else substituted - derived
    return TauItem(
        indices=indices,
        substituted=substituted,
        residual=residual,
        factor=factor,
        printed_factor=_factor(substituted, hirota_equation(j, k, m, "printed")),
    )


def _orbit_findings(items: List[TauItem]) -> List[Finding]:
    orbits: Dict[Tuple[int, int, int], set] = {}
    for item in items:
        j, k, m = item.indices
        orbits.setdefault((min(j, k), max(j, k), m), set()).add(item.factor)
    return [
        Finding(
            code="tau-factor-orbit",
            message=f"factors differ within the orbit {orbit}: {sorted(str(f) for f in factors)}",
        )
        for orbit, factors in sorted(orbits.items())
        if len(factors) > 1
    ]


def tau_substitution_check(jmax: int, kmax: int, mmax: int, workers: int = 1) -> TauSubstitutionReport:
    """Match every tau-substituted closure item against the Hirota equation at the same indices."""

    tasks = [
        (j, k, m)
        for j in range(1, jmax + 1)
        for k in range(1, kmax + 1)
        for m in range(1, mmax + 1)
    ]
    items = list(ordered_map(_tau_item, tasks, workers=workers))
    findings = _orbit_findings(items)
    mismatched = [item for item in items if item.printed_factor is None]
    if mismatched:
        first = mismatched[0]
        j, k, m = first.indices
        findings.append(
            Finding(
                code="hirota-printed",
                message=(
                    f"printed Hirota equation is not proportional to the substituted closure item "
                    f"at {len(mismatched)} index triples; its last sum should carry 1/(l(m-l))"
                ),
                printed=canonical_string(hirota_equation(j, k, m, "printed")),
                derived=canonical_string(first.substituted),
            )
        )
    return TauSubstitutionReport(items=items, findings=findings)


def exactness_conditions(nmax: int) -> ConstraintSystem:
    """``D[H[i,n]; x_l] - D[H[l,n]; x_i]`` under the tau substitution, for ``i < l``.

    Each item is a difference of two orderings of one third derivative of F.
    """

    items = {}
    for n in range(1, nmax + 1):
        for i in range(1, nmax + 1):
            for l in range(i + 1, nmax + 1):
                (left,) = fhess_var(i, n).variables()
                (right,) = fhess_var(l, n).variables()
                items[(i, l, n)] = (jet(left, l) - jet(right, i)).scale(Fraction(-1, n))
    return ConstraintSystem(label="exactness", items=items)


__all__ = [
    "TauItem",
    "TauSubstitutionReport",
    "VARIANTS",
    "exactness_conditions",
    "hirota_equation",
    "tau_substitute",
    "tau_substitution_check",
]
