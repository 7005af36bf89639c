"""The coisotropy hierarchy of the first stratum.

The bracket of the curve ``F = p3^2 - p2^3 - mu4 p2 p3 - ... - mu0`` with
``h4 = p4 - p2^2 - v2 p3 - v1 p2 - v0`` in canonical coordinates is reduced
modulo both generators and split over the monomials ``p2^a p3^b`` (``b <= 1``).
The ``p2^2 p3`` and ``p2^3`` equations fix ``v2`` and ``v1`` after one
integration in ``x2``; the other five give the ``x4`` flows of ``mu4 ... mu0``.

The inverse of ``d/dx2`` is carried by the field ``w[4]`` with
``D[w[4]; x2] = D[mu[4]; x3]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from logic.poisson import bracket
from logic.rewriting import solve_linear
from logic.strata_varieties import H4_GENERATOR, ideal_basis, ideal_reduce, mu_curve, p_monomial
from models.constraints import Finding, PDESystem
from models.errors import EliminationError
from models.phase_space import canonical_x
from models.polynomial import Polynomial, jet, var
from models.symbols import Family, JetKey, Stratum, make_jet, make_symbol
from models.text_format import canonical_string, parse_polynomial

PRINTED_FLOWS = {
    4: (
        "-2/3*D[mu[2]; x2]*mu[3] - 2/3*mu[2]*D[mu[3]; x2] - 5/9*mu[4]^2*D[mu[4]; x2]"
        " + 4/9*mu[4]*D[mu[4]; x3] + 2*D[mu[2]; x2] + 4/3*D[mu[3]; x3]"
        " + 4/9*D[mu[4]; x2]*w[4] + 8/9*D[w[4]; x3]"
    ),
    3: (
        "-2/3*mu[4]*mu[3]*D[mu[4]; x2] + v[1]*D[mu[3]; x2] + 2*D[mu[1]; x2] - 3*D[v[0]; x2]"
        " - 2*mu[3]*D[v[1]; x2] + 2/3*mu[4]*D[mu[3]; x3] - mu[4]*D[v[1]; x3]"
        " + 4/3*mu[3]*D[mu[4]; x3]"
    ),
    2: (
        "-2/3*mu[4]*mu[2]*D[mu[4]; x2] + 2*D[v[0]; x3] + v[1]*D[mu[2]; x2] - mu[4]*D[v[0]; x2]"
        " - 2/3*mu[1]*D[mu[4]; x2] + 2/3*mu[4]*D[mu[2]; x3] + 2/3*mu[2]*D[mu[4]; x3]"
    ),
    1: (
        "-2/3*mu[4]*mu[1]*D[mu[4]; x2] + 2*D[mu[0]; x2] + v[1]*D[mu[1]; x2]"
        " - 2*mu[3]*D[v[0]; x2] - mu[1]*D[v[1]; x2] + 2/3*mu[4]*D[mu[1]; x3]"
        " - mu[4]*D[v[0]; x3] - mu[2]*D[v[1]; x3] + 4/3*mu[1]*D[mu[4]; x3]"
    ),
    0: (
        "v[1]*D[mu[0]; x2] - mu[1]*D[v[0]; x2] + 2/3*mu[4]*D[mu[0]; x3] - mu[2]*D[v[0]; x3]"
        " - 2/3*mu[4]*mu[0]*D[mu[4]; x2] + 4/3*mu[0]*D[mu[4]; x3]"
    ),
}
PRINTED_V1 = "2/3*mu[3] - 2/9*mu[4]^2 + 4/3*w[4]"

# Which reduced monomial carries the x4-derivative of mu[a].
FLOW_MONOMIALS = {4: (2, 3), 3: (2, 2), 2: (3,), 1: (2,), 0: ()}
V2_MONOMIAL = (2, 2, 3)
V1_MONOMIAL = (2, 2, 2)

MU4 = make_symbol(Family.MU, 4)
W4 = make_symbol(Family.W, 4)


def mu_symbol(a: int) -> JetKey:
    return make_symbol(Family.MU, a)


def v_symbol(a: int) -> JetKey:
    return make_symbol(Family.V, a)


@dataclass(frozen=True)
class Stratum1Hierarchy:
    """The derived flows with the solved ``v2``, ``v1`` and the printed comparison."""

    system: PDESystem
    printed: PDESystem
    v2: Polynomial
    v1: Polynomial
    flows: Dict[int, Polynomial] = field(default_factory=dict)
    residuals: Dict[str, Polynomial] = field(default_factory=dict)
    findings: List[Finding] = field(default_factory=list)


def reduce_w(poly: Polynomial) -> Polynomial:
    """Apply ``D[w[4]; x2] -> D[mu[4]; x3]`` to every jet of ``w[4]`` with an ``x2``."""

    def image(key: JetKey) -> Optional[Polynomial]:
        if key.family is not Family.W or 2 not in key.derivatives:
            return None
        rest = list(key.derivatives)
        rest.remove(2)
        return Polynomial.variable(make_jet(MU4, rest + [3]))

    return poly.map_variables(image)


def substitute_field(poly: Polynomial, base: JetKey, value: Polynomial) -> Polynomial:
    """Replace the field ``base`` and each of its jets by ``value`` and its total derivatives."""

    def image(key: JetKey) -> Optional[Polynomial]:
        if key.base != base:
            return None
        result = value
        for direction in key.derivatives:
            result = result.formal_derivative(direction)
        return reduce_w(result)

    return poly.map_variables(image)


def integrate_x2(rate: Polynomial) -> Polynomial:
    """An antiderivative in ``x2`` of a sum of ``f^n D[f; x2]`` and ``D[mu[4]; x3]`` terms.

    The result is checked by differentiating back; anything else raises.
    """

    total = Polynomial.zero()
    for mono, coeff in rate.items():
        factors = dict(mono)
        if factors == {make_jet(MU4, (3,)): 1}:
            total = total + Polynomial.variable(W4).scale(coeff)
            continue
        jets = [key for key in factors if key.derivatives == (2,) and factors[key] == 1]
        if len(jets) != 1:
            raise EliminationError("term is not an x2-derivative", residual=rate)
        base = jets[0].base
        n = factors.get(base, 0)
        if set(factors) - {base, jets[0]}:
            raise EliminationError("term is not an x2-derivative", residual=rate)
        total = total + Polynomial.variable(base, n + 1).scale(Fraction(coeff) / (n + 1))
    check = reduce_w(total.formal_derivative(2)) - rate
    if not check.is_zero:
        raise EliminationError("x2 antiderivative does not differentiate back", residual=check)
    return total


def coisotropy_bracket() -> Polynomial:
    """``{F, h4}`` reduced modulo the first-stratum ideal."""

    curve = mu_curve().polynomial
    h4 = parse_polynomial(H4_GENERATOR)
    raw = bracket(curve, h4, canonical_x())
    return ideal_reduce(raw, ideal_basis(Stratum.SIGMA1, 4))


def _coefficient(groups: Dict, indices) -> Polynomial:
    return groups.get(p_monomial(*indices), Polynomial.zero())


def _solve_v(equation: Polynomial, a: int) -> Polynomial:
    rate = solve_linear(equation, make_jet(v_symbol(a), (2,)), context=f"v[{a}]")
    return integrate_x2(rate)


def _finding(code: str, message: str, printed: Polynomial, derived: Polynomial) -> Finding:
    return Finding(code=code, message=message, printed=canonical_string(printed), derived=canonical_string(derived))


def stratum1_coisotropy(gauge_v0: Optional[Polynomial] = None) -> Stratum1Hierarchy:
    """Derive the ``x4`` flows of ``mu0 ... mu4``; ``v0`` stays symbolic unless a gauge is given."""

    groups = coisotropy_bracket().collect(lambda key: key.family is Family.P)
    expected = {p_monomial(*m) for m in list(FLOW_MONOMIALS.values()) + [V2_MONOMIAL, V1_MONOMIAL]}
    stray = set(groups) - expected
    if stray:
        raise EliminationError(
            "reduced bracket has monomials outside the expected set",
            residual=sum((groups[m] for m in sorted(stray)), Polynomial.zero()),
        )

    v2 = _solve_v(_coefficient(groups, V2_MONOMIAL), 2)
    groups = {mono: substitute_field(eq, v_symbol(2), v2) for mono, eq in groups.items()}
    v1 = _solve_v(_coefficient(groups, V1_MONOMIAL), 1)

    def gauge(poly: Polynomial) -> Polynomial:
        return poly if gauge_v0 is None else substitute_field(poly, v_symbol(0), gauge_v0)

    residuals = {
        "p2^2*p3": _coefficient(groups, V2_MONOMIAL),
        "p2^3": reduce_w(substitute_field(_coefficient(groups, V1_MONOMIAL), v_symbol(1), v1)),
    }
    flows: Dict[int, Polynomial] = {}
    for a, monomial in FLOW_MONOMIALS.items():
        rhs = solve_linear(_coefficient(groups, monomial), make_jet(mu_symbol(a), (4,)), context=f"mu[{a}]")
        if a == 4:
            rhs = reduce_w(substitute_field(rhs, v_symbol(1), v1))
        flows[a] = gauge(rhs)

    printed_v1 = parse_polynomial(PRINTED_V1)
    findings: List[Finding] = []
    if not (printed_v1 - v1).is_zero:
        findings.append(_finding("stratum1:v1", "printed v1 differs from the integrated p2^3 equation", printed_v1, v1))
    printed_flows = {a: gauge(parse_polynomial(text)) for a, text in PRINTED_FLOWS.items()}
    for a in sorted(flows, reverse=True):
        if not (printed_flows[a] - flows[a]).is_zero:
            findings.append(
                _finding(
                    f"stratum1:mu{a}",
                    f"printed x4-flow of mu[{a}] differs from the derived one",
                    printed_flows[a],
                    flows[a],
                )
            )

    def as_system(label: str, rhs: Dict[int, Polynomial], extra: Dict[str, Polynomial]) -> PDESystem:
        order = sorted(rhs, reverse=True)
        return PDESystem(
            label=label,
            equations=[jet(mu_symbol(a), 4) - rhs[a] for a in order] + list(extra.values()),
            names=[f"mu{a}" for a in order] + list(extra),
        )

    auxiliary = {
        "v2": var(Family.V, 2) - v2,
        "v1": var(Family.V, 1) - v1,
        "w": jet(W4, 2) - jet(MU4, 3),
    }
    system = as_system("stratum1", flows, auxiliary)
    return Stratum1Hierarchy(
        system=system,
        printed=as_system("stratum1:printed", printed_flows, {"v1": var(Family.V, 1) - printed_v1}),
        v2=v2,
        v1=v1,
        flows=flows,
        residuals=residuals,
        findings=findings,
    )


__all__ = [
    "PRINTED_FLOWS",
    "PRINTED_V1",
    "Stratum1Hierarchy",
    "coisotropy_bracket",
    "integrate_x2",
    "reduce_w",
    "stratum1_coisotropy",
    "substitute_field",
]
