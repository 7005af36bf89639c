"""Currents, the first-stratum curve and the canonical ideals.

On the big cell every ``p_n`` is a polynomial in ``p_1`` with ``u``
coefficients; on the first stratum every ``p_n`` (``n >= 4``) is a polynomial
in ``p_2``, ``p_3``, which satisfy one cubic relation. Both come out of the
structure constants by the recursion ``p_n = p_g p_{n-g} - sum_{l<n} C^l p_l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

from logic.closure import BigCellClosureReducer, Sigma1Reducer, reducer_for
from logic.rewriting import SymbolRewriter
from logic.schur import canonical_pstar
from models.constraints import Finding
from models.errors import NonTriangularBasisError, TruncationError
from models.laurent import LaurentSeries, StratumBasis, series_mul
from models.polynomial import ONE_MONOMIAL, Polynomial, h_to_u, p_var, u_var, var
from models.structure_constants import structure_constant
from models.symbols import Family, JetKey, Stratum, make_symbol
from models.text_format import canonical_string, parse_polynomial

PRINTED_BIG_CELL_CURRENTS = {
    2: "p[1]^2 - 2*u[1]",
    3: "p[1]^3 - 3*u[1]*p[1] - 3*u[2]",
    4: "p[1]^4 - 4*u[1]*p[1]^2 - 4*u[2]*p[1] - 4*u[3] + 2*u[1]^2",
    5: "p[1]^5 - 5*u[1]*p[1]^3 - 5*u[2]*p[1]^2 - (5*u[3] - 5*u[1]^2)*p[1] - 5*u[4] + 5*u[1]*u[2]",
}
PRINTED_SIGMA1_CURRENTS = {
    4: "p[2]^2 - 2*H[2,-1]*p[3] - H[2,-1]^2*p[2] - 2*H[2,2] - 2*H[2,-1]*H[2,1]",
    5: (
        "p[2]*p[3] - H[2,-1]*p[2]^2 - (H[3,-1] - 2*H[2,-1]^2)*p[3]"
        " - (H[2,1] + H[2,-1]*H[3,-1] - H[2,-1]^3)*p[2] - 3/2*H[2,1]*H[3,-1] - 5/2*H[2,3]"
        " - 1/2*H[2,-1]*H[3,1] + 2*H[2,-1]*H[2,2] + 2*H[2,-1]^2*H[2,1]"
    ),
}
PRINTED_CURVE = (
    "p[3]^2 - p[2]^3 + 3*H[2,-1]*p[3]*p[2] - 2*H[3,-1]*p[2]^2"
    " + (H[2,-1]^3 + 3*H[2,1] + H[2,-1]*H[3,-1])*p[3]"
    " - (H[3,-1]^2 + 2*H[3,1] - 3*H[2,-1]*H[2,1] - 3*H[2,2] + H[3,-1]*H[2,-1]^2)*p[2]"
    " - 2*H[3,3] - 2*H[3,-1]*H[3,1] + 3*H[2,4] + 3*H[2,2]*H[2,-1]^2 - 3/2*H[2,-1]*H[2,3]"
    " + 3*H[2,1]^2 - 3/2*H[2,-1]^2*H[3,1] - 1/2*H[2,-1]*H[2,1]*H[3,-1] + 4*H[3,-1]*H[2,2]"
)
MU_CURVE = "p[3]^2 - p[2]^3 - mu[4]*p[2]*p[3] - mu[3]*p[2]^2 - mu[2]*p[3] - mu[1]*p[2] - mu[0]"
MU_CURVE_AS_PRINTED = (
    "p[3]^2 - p[2]^3 - mu[4]*p[2]*p[3] - mu[3]*p[2]^2 - mu[2]*p[3] - mu[2]*p[2] - mu[0]"
)
H4_GENERATOR = "p[4] - p[2]^2 - v[2]*p[3] - v[1]*p[2] - v[0]"

# Curve monomials by z-degree: p2 p3, p2^2, p3, p2, 1.
_CURVE_MONOMIALS: Dict[int, Tuple[int, ...]] = {5: (2, 3), 4: (2, 2), 3: (3,), 2: (2,), 0: ()}


@dataclass(frozen=True)
class CurrentExpression:
    stratum: Stratum
    n: int
    expression: Polynomial
    printed: Optional[Polynomial] = None
    matches_printed: Optional[bool] = None

    @property
    def text(self) -> str:
        return canonical_string(self.expression)


@dataclass(frozen=True)
class CurveGenerator:
    name: str
    polynomial: Polynomial
    stratum: Stratum = Stratum.SIGMA1


@dataclass(frozen=True)
class CurveDerivation:
    """The cubic relation re-derived from series, with its expected-zero residuals."""

    derived: Polynomial
    printed: Polynomial
    residuals: Dict[int, Polynomial] = field(default_factory=dict)
    findings: List[Finding] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return (self.derived - self.printed).is_zero


@dataclass(frozen=True)
class IdealBasis:
    stratum: Stratum
    generators: Dict[str, Polynomial] = field(default_factory=dict)


def generator_for(stratum: Stratum) -> int:
    return 2 if stratum is Stratum.SIGMA1 else 1


def _is_generator(stratum: Stratum, n: int) -> bool:
    if stratum is Stratum.SIGMA1:
        return n in (2, 3)
    return n == 1


@lru_cache(maxsize=None)
def _raw_current(stratum: Stratum, n: int) -> Polynomial:
    if n == 0:
        return Polynomial.constant(1)
    if _is_generator(stratum, n):
        return p_var(n)
    g = generator_for(stratum)
    value = p_var(g) * _raw_current(stratum, n - g)
    for l in range(n):
        if stratum is Stratum.SIGMA1 and l == 1:
            continue
        coefficient = structure_constant(stratum, g, n - g, l)
        if not coefficient.is_zero:
            value = value - coefficient * _raw_current(stratum, l)
    return value


def express_current(
    stratum: Stratum, n: int, reducer: Optional[SymbolRewriter] = None
) -> CurrentExpression:
    """``p_n`` in the generators of the stratum, coefficients in normal form."""

    smallest = 4 if stratum is Stratum.SIGMA1 else 2
    if n < smallest:
        raise TruncationError(f"p[{n}] is a generator or not a basis element of {stratum.value}")
    reducer = reducer or reducer_for(stratum)
    expression = reducer.reduce(_raw_current(stratum, n))
    printed_table = PRINTED_SIGMA1_CURRENTS if stratum is Stratum.SIGMA1 else PRINTED_BIG_CELL_CURRENTS
    printed: Optional[Polynomial] = None
    matches: Optional[bool] = None
    if stratum is Stratum.BIG_CELL:
        expression = h_to_u(expression)
    if n in printed_table:
        printed = parse_polynomial(printed_table[n])
        if stratum is Stratum.SIGMA1:
            matches = (reducer.reduce(printed) - expression).is_zero
        else:
            matches = (printed - expression).is_zero
    return CurrentExpression(stratum, n, expression, printed, matches)


def current_rules(stratum: Stratum, nmax: int, reducer: Optional[SymbolRewriter] = None) -> Dict[JetKey, Polynomial]:
    """``p[n] -> p_n(generators)`` for every non-generator index up to ``nmax``."""

    reducer = reducer or reducer_for(stratum)
    smallest = 4 if stratum is Stratum.SIGMA1 else 2
    return {
        make_symbol(Family.P, n): express_current(stratum, n, reducer).expression
        for n in range(smallest, nmax + 1)
    }


def elliptic_curve() -> CurveGenerator:
    return CurveGenerator(name="F123", polynomial=parse_polynomial(PRINTED_CURVE))


def mu_curve() -> CurveGenerator:
    return CurveGenerator(name="F123-mu", polynomial=parse_polynomial(MU_CURVE))


def _product_series(basis: StratumBasis, indices: Tuple[int, ...]) -> LaurentSeries:
    series = basis.element(0)
    for i in indices:
        series = series_mul(series, basis.element(i))
    return series


def derive_curve(order: int = 10, depth: int = 2, reducer: Optional[Sigma1Reducer] = None) -> CurveDerivation:
    """Re-derive the cubic relation between ``p_2`` and ``p_3`` from series products.

    ``p_3^2 - p_2^3`` is reduced top-down against ``p_2 p_3, p_2^2, p_3, p_2, 1``;
    the ``z^1`` coefficient and the first ``depth`` negative coefficients of
    what remains are expected to vanish modulo closure.
    """

    reducer = reducer or Sigma1Reducer()
    basis = StratumBasis(Stratum.SIGMA1, order)
    p2, p3 = basis.element(2), basis.element(3)
    remainder = series_mul(p3, p3) - series_mul(series_mul(p2, p2), p2)
    derived = p_var(3) ** 2 - p_var(2) ** 3
    residuals: Dict[int, Polynomial] = {6: reducer.reduce(remainder.coefficient(6))}
    for degree in (5, 4, 3, 2, 0):
        coefficient = remainder.coefficient(degree)
        if coefficient.is_zero:
            continue
        indices = _CURVE_MONOMIALS[degree]
        remainder = remainder - _product_series(basis, indices).scale(coefficient)
        monomial = Polynomial.constant(1)
        for i in indices:
            monomial = monomial * p_var(i)
        derived = derived - coefficient * monomial
    residuals[1] = reducer.reduce(remainder.coefficient(1))
    for m in range(1, depth + 1):
        residuals[-m] = reducer.reduce(remainder.coefficient(-m))
    derived = reducer.reduce(derived)
    printed = reducer.reduce(elliptic_curve().polynomial)
    findings: List[Finding] = []
    if not (derived - printed).is_zero:
        findings.append(
            Finding(
                code="curve-coefficients",
                message="printed cubic relation differs from the series derivation",
                printed=canonical_string(printed),
                derived=canonical_string(derived),
            )
        )
    return CurveDerivation(derived=derived, printed=printed, residuals=residuals, findings=findings)


def _p_family(key: JetKey) -> bool:
    return key.family is Family.P


def p_monomial(*indices: int) -> Tuple:
    counts: Dict[JetKey, int] = {}
    for i in indices:
        key = make_symbol(Family.P, i)
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items())) if counts else ONE_MONOMIAL


def mu_dictionary(curve: Polynomial) -> Dict[int, Polynomial]:
    """``mu_a`` as coefficients of a cubic ``p3^2 - p2^3 - mu4 p2 p3 - ... - mu0``."""

    groups = curve.collect(_p_family)
    expected_leading = {p_monomial(3, 3): 1, p_monomial(2, 2, 2): -1}
    for mono, coeff in expected_leading.items():
        if groups.get(mono, Polynomial.zero()) != coeff:
            raise NonTriangularBasisError("curve is not monic in p[3]^2 - p[2]^3")
    dictionary = {}
    for a, degree in zip((4, 3, 2, 1, 0), (5, 4, 3, 2, 0)):
        dictionary[a] = -groups.get(p_monomial(*_CURVE_MONOMIALS[degree]), Polynomial.zero())
    return dictionary


def mu_form_findings() -> List[Finding]:
    """The printed ideal form repeats ``mu[2]``; the ``p[2]`` coefficient is read as ``mu[1]``."""

    printed = parse_polynomial(MU_CURVE_AS_PRINTED)
    groups = printed.collect(_p_family)
    parameters = [groups.get(p_monomial(*_CURVE_MONOMIALS[d]), Polynomial.zero()) for d in (5, 4, 3, 2, 0)]
    distinct = {canonical_string(p) for p in parameters}
    if len(distinct) == len(parameters):
        return []
    return [
        Finding(
            code="mu-parameters",
            message="printed ideal form uses the same parameter for two curve monomials; p[2] coefficient read as mu[1]",
            printed=canonical_string(printed),
            derived=MU_CURVE,
        )
    ]


def h4_coefficients(reducer: Optional[Sigma1Reducer] = None) -> Dict[int, Polynomial]:
    """``v_2, v_1, v_0`` of ``h4 = p4 - p2^2 - v2 p3 - v1 p2 - v0`` in first-stratum parameters."""

    current = express_current(Stratum.SIGMA1, 4, reducer).expression - p_var(2) ** 2
    groups = current.collect(_p_family)
    return {
        2: groups.get(p_monomial(3), Polynomial.zero()),
        1: groups.get(p_monomial(2), Polynomial.zero()),
        0: groups.get(ONE_MONOMIAL, Polynomial.zero()),
    }


def ideal_basis(stratum: Stratum, nmax: int) -> IdealBasis:
    if nmax < 2:
        raise TruncationError("ideal bases start at n = 2")
    if stratum is Stratum.SIGMA1:
        return IdealBasis(
            stratum=stratum,
            generators={"F123": mu_curve().polynomial, "h4": parse_polynomial(H4_GENERATOR)},
        )
    generators = {
        f"h*{n}": var(Family.PSTAR, n) - u_var(n - 1) for n in range(2, nmax + 1)
    }
    return IdealBasis(stratum=stratum, generators=generators)


def _leading_rule(generator: Polynomial) -> Tuple[JetKey, int, Polynomial]:
    """Orient a generator as ``key^exp -> replacement`` on its greatest coordinate."""

    coordinates = [k for k in generator.variables() if k.family in (Family.P, Family.PSTAR) and k.is_plain]
    if not coordinates:
        raise NonTriangularBasisError(f"generator {canonical_string(generator)} has no coordinate symbol")
    key = max(coordinates)
    exp = generator.degree_in(key)
    head = generator.collect(lambda k: k == key).get(((key, exp),), Polynomial.zero())
    if not head.is_constant or head.is_zero:
        raise NonTriangularBasisError(
            f"leading coefficient of {canonical_string(generator)} in its top coordinate is not a constant"
        )
    rest = generator - head * Polynomial.variable(key, exp)
    return key, exp, rest.scale(-1) / head.constant_term


def _apply_rule(poly: Polynomial, key: JetKey, exp: int, replacement: Polynomial) -> Polynomial:
    result = Polynomial.zero()
    for mono, coeff in poly.items():
        power = dict(mono).get(key, 0)
        if power < exp:
            result = result + Polynomial({mono: coeff})
            continue
        q, r = divmod(power, exp)
        kept = tuple((k, e) for k, e in mono if k != key)
        if r:
            kept = tuple(sorted(kept + ((key, r),)))
        result = result + Polynomial({kept: coeff}) * replacement**q
    return result


def ideal_reduce(
    f: Polynomial,
    basis: IdealBasis,
    currents: Optional[Mapping[JetKey, Polynomial]] = None,
    max_rounds: int = 64,
) -> Polynomial:
    """Rewrite ``f`` by the oriented generators and current rules until nothing changes."""

    rules = [_leading_rule(g) for g in basis.generators.values()]
    current = f
    for _ in range(max_rounds):
        updated = current.substitute(dict(currents)) if currents else current
        for key, exp, replacement in rules:
            updated = _apply_rule(updated, key, exp, replacement)
        if updated == current:
            return current
        current = updated
    raise NonTriangularBasisError(f"ideal reduction did not reach a fixpoint in {max_rounds} rounds")


def on_shell_pstar(nmax: int, reducer: Optional[BigCellClosureReducer] = None) -> Dict[int, Polynomial]:
    """``p*_n - u_{n-1}`` on the big cell, in ``p_1`` and ``u``; every entry vanishes."""

    reducer = reducer or BigCellClosureReducer()
    currents = current_rules(Stratum.BIG_CELL, nmax, reducer)
    return {
        n: (canonical_pstar(n) - u_var(n - 1)).substitute(currents)
        for n in range(2, nmax + 1)
    }


__all__ = [
    "CurrentExpression",
    "CurveDerivation",
    "CurveGenerator",
    "H4_GENERATOR",
    "IdealBasis",
    "MU_CURVE",
    "PRINTED_CURVE",
    "current_rules",
    "derive_curve",
    "elliptic_curve",
    "express_current",
    "h4_coefficients",
    "ideal_basis",
    "ideal_reduce",
    "mu_curve",
    "mu_dictionary",
    "mu_form_findings",
    "on_shell_pstar",
    "p_monomial",
]
