"""Brackets, Jacobi identities and the Poisson-ideal conditions of the big cell.

The bracket is ``{f, g} = sum_k (Y_k f * d_{q_k} g - d_{q_k} f * Y_k g)`` with
``Y_k = sum_i J_{ki} d/dy_i``, which realises ``{y_i, q_k} = J_{ki}`` and
``{q, q} = {y, y} = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from logic.rewriting import DEFAULT_REWRITE_DEPTH
from logic.schur import canonical_pstar
from logic.tangent import DkpRewriter, TangentReducer
from models.constraints import ConstraintSystem, Finding, PDESystem
from models.errors import ForeignSymbolError
from models.phase_space import BracketMode, PhaseSpace, generic_pstar
from models.polynomial import Polynomial, delta_var, j_var, pstar_var, u_jet, u_to_h, u_var, var
from models.symbols import Family, JetKey, make_symbol
from models.text_format import canonical_string, symbol_string
from tools.parallel import ordered_map

Indices = Tuple[int, ...]


def _check_owned(poly: Polynomial, ps: PhaseSpace) -> None:
    foreign = sorted(k for k in poly.variables() if not ps.owns(k))
    if foreign:
        names = ", ".join(symbol_string(k) for k in foreign[:4])
        raise ForeignSymbolError(f"{ps.name}: symbols outside the phase space: {names}")


def vector_field(f: Polynomial, k: int, ps: PhaseSpace) -> Polynomial:
    """``Y_k f``."""

    if ps.mode is BracketMode.CHAIN:
        return f.formal_derivative(k)
    total = Polynomial.zero()
    for key in sorted(f.variables()):
        if ps.is_y(key) and key.is_plain:
            total = total + ps.entry(k, key.indices[0]) * f.partial(key)
    return total


def _q_indices(*polys: Polynomial, ps: PhaseSpace) -> List[int]:
    found = {key.indices[0] for poly in polys for key in poly.variables() if ps.is_q(key)}
    return sorted(found)


def bracket(f: Polynomial, g: Polynomial, ps: PhaseSpace) -> Polynomial:
    _check_owned(f, ps)
    _check_owned(g, ps)
    total = Polynomial.zero()
    for k in _q_indices(f, g, ps=ps):
        q = make_symbol(ps.q_family, k)
        dq_f, dq_g = f.partial(q), g.partial(q)
        if not dq_g.is_zero:
            total = total + vector_field(f, k, ps) * dq_g
        if not dq_f.is_zero:
            total = total - dq_f * vector_field(g, k, ps)
    return total


def jacobi_defect(ps: PhaseSpace, l: int, k: int, j: int, indices: int) -> Tuple[Polynomial, Polynomial]:
    """The two sums whose vanishing is the Jacobi identity for the table ``J``.

    ``Y_l J_{kj} - Y_k J_{lj}`` and
    ``sum_s (J_{sj} d_{q_s} J_{lk} - J_{sk} d_{q_s} J_{lj})`` over ``s <= indices``.
    """

    first = vector_field(ps.entry(k, j), l, ps) - vector_field(ps.entry(l, j), k, ps)
    second = Polynomial.zero()
    for s in range(1, indices + 1):
        q = make_symbol(ps.q_family, s)
        second = second + ps.entry(s, j) * ps.entry(l, k).partial(q)
        second = second - ps.entry(s, k) * ps.entry(l, j).partial(q)
    return first, second


def h_star(n: int) -> Polynomial:
    """``h*_n = p*_n - u_{n-1}``."""

    return var(Family.PSTAR, n) - u_var(n - 1)


def ideal_bracket_residue(n: int, m: int, ps: Optional[PhaseSpace] = None) -> Polynomial:
    """``{h*_n, h*_m} - (J*_{n,m-1} - J*_{m,n-1})``, which vanishes identically."""

    ps = ps or generic_pstar()
    expected = ps.entry(n, m - 1) - ps.entry(m, n - 1) if m > 1 and n > 1 else Polynomial.zero()
    return bracket(h_star(n), h_star(m), ps) - expected


def first_family(n: int, m: int, entry=j_var) -> Polynomial:
    return entry(m, n).scale(Fraction(1, m)) - entry(n, m).scale(Fraction(1, n))


def second_family(n: int, m: int, entry=j_var) -> Polynomial:
    value = entry(m, n - 1).scale(Fraction(1, m)) - entry(n, m - 1).scale(Fraction(1, n))
    for k in range(1, m - 1):
        value = value + (u_var(m - k - 1) * entry(k, n - 1)).scale(Fraction(1, k))
    for k in range(1, n - 1):
        value = value - (u_var(n - k - 1) * entry(k, m - 1)).scale(Fraction(1, k))
    return value


def linear_ansatz_constraints(nmax: int, mmax: int, entry=j_var) -> ConstraintSystem:
    """Items keyed ``(1, n, m)`` for the first family and ``(2, n, m)`` for the second.

    The second family runs over ``n, m >= 2``.
    """

    items: Dict[Indices, Polynomial] = {}
    for n in range(1, nmax + 1):
        for m in range(1, mmax + 1):
            items[(1, n, m)] = first_family(n, m, entry)
    for n in range(2, nmax + 1):
        for m in range(2, mmax + 1):
            items[(2, n, m)] = second_family(n, m, entry)
    return ConstraintSystem(label="linear-ansatz", items=items)


def induced_jstar(l: int, k: int) -> Polynomial:
    """``J*_{lk} = -sum_m (1/m) J_{mk} p*_{l-m}``."""

    total = Polynomial.zero()
    for m in range(1, l + 1):
        total = total - (j_var(m, k) * pstar_var(l - m)).scale(Fraction(1, m))
    return total


def _restrict_to_curve(key: JetKey) -> Optional[Polynomial]:
    if key.family is Family.PSTAR and key.indices[0] >= 2:
        return u_var(key.indices[0] - 1)
    return None


@dataclass(frozen=True)
class RestrictionDecomposition:
    """``J*_{lk}`` restricted to the curve, split as ``alpha + beta p*_1``."""

    alpha: Dict[Tuple[int, int], Polynomial] = field(default_factory=dict)
    beta: Dict[Tuple[int, int], Polynomial] = field(default_factory=dict)

    def conditions(self, nmax: int) -> ConstraintSystem:
        """``alpha_{n,m-1} - alpha_{m,n-1}`` minus the second family, and the same for ``beta``
        against the first family shifted by one; every item vanishes."""

        items: Dict[Indices, Polynomial] = {}
        for n in range(2, nmax + 1):
            for m in range(2, nmax + 1):
                a = self.alpha[(n, m - 1)] - self.alpha[(m, n - 1)]
                b = self.beta[(n, m - 1)] - self.beta[(m, n - 1)]
                items[(2, n, m)] = a - second_family(n, m)
                items[(1, n, m)] = b - first_family(n - 1, m - 1)
        return ConstraintSystem(label="restriction", items=items)


def restriction_decomposition(lmax: int, kmax: int) -> RestrictionDecomposition:
    p1 = make_symbol(Family.PSTAR, 1)
    alpha, beta = {}, {}
    for l in range(1, lmax + 1):
        for k in range(1, kmax + 1):
            restricted = induced_jstar(l, k).map_variables(_restrict_to_curve)
            alpha[(l, k)] = restricted.map_variables(
                lambda key: Polynomial.zero() if key == p1 else None
            )
            beta[(l, k)] = restricted.partial(p1)
    return RestrictionDecomposition(alpha=alpha, beta=beta)


def alpha_closed_form(l: int, k: int) -> Polynomial:
    value = j_var(l, k).scale(Fraction(-1, l))
    for m in range(1, l - 1):
        value = value - (j_var(m, k) * u_var(l - m - 1)).scale(Fraction(1, m))
    return value


def beta_closed_form(l: int, k: int) -> Polynomial:
    if l < 2:
        return Polynomial.zero()
    return j_var(l - 1, k).scale(Fraction(-1, l - 1))


def jstar_consistency(imax: int, kmax: int) -> ConstraintSystem:
    """``sum_m J_{mk} dp*_i/dp_m`` against ``-sum_m (1/m) J_{mk} p*_{i-m}``, both in ``p``."""

    items: Dict[Indices, Polynomial] = {}
    for i in range(1, imax + 1):
        for k in range(1, kmax + 1):
            chain = Polynomial.zero()
            direct = Polynomial.zero()
            for m in range(1, i + 1):
                chain = chain + j_var(m, k) * canonical_pstar(i).partial(make_symbol(Family.P, m))
                direct = direct - (j_var(m, k) * canonical_pstar(i - m)).scale(Fraction(1, m))
            items[(i, k)] = chain - direct
    return ConstraintSystem(label="jstar-consistency", items=items)


@dataclass(frozen=True)
class EquivalenceReport:
    reduced: ConstraintSystem
    traces: Dict[Indices, List[str]] = field(default_factory=dict)


def _reduce_chunk(args: Tuple[int, List[Tuple[Indices, Polynomial]]]) -> List[Tuple[Indices, Polynomial, List[str]]]:
    max_depth, chunk = args
    reducer = TangentReducer(max_depth=max_depth)
    out = []
    for key, poly in chunk:
        reduced = reducer.reduce(poly)
        out.append((key, reduced, [] if reduced.is_zero else reducer.trace(poly)))
    return out


def equivalence_J_vs_Delta(
    nmax: int, workers: int = 1, max_depth: int = DEFAULT_REWRITE_DEPTH
) -> EquivalenceReport:
    """Replace ``J`` by ``Delta`` in the linear-ansatz items and reduce modulo the tangent,
    symmetry and closure relations; every item is expected to vanish."""

    system = linear_ansatz_constraints(nmax, nmax, entry=delta_var).map(u_to_h)
    items = list(system.items.items())
    chunks = max(1, workers)
    tasks = [(max_depth, items[i::chunks]) for i in range(chunks)]
    reduced: Dict[Indices, Polynomial] = {}
    traces: Dict[Indices, List[str]] = {}
    for part in ordered_map(_reduce_chunk, tasks, workers=workers):
        for key, poly, trace in part:
            reduced[key] = poly
            if trace:
                traces[key] = trace
    ordered = {key: reduced[key] for key, _ in items}
    return EquivalenceReport(reduced=ConstraintSystem(label="equivalence", items=ordered), traces=traces)


def _jet_entry(k: int, i: int) -> Polynomial:
    return u_jet(i, k)


def darboux_system(nmax: int, mmax: int) -> PDESystem:
    system = linear_ansatz_constraints(nmax, mmax, entry=_jet_entry)
    names = [f"{'first' if key[0] == 1 else 'second'}{key[1:]}" for key in system.items]
    return PDESystem(label="darboux", equations=list(system.items.values()), names=names)


def printed_darboux_second(n: int, m: int) -> Polynomial:
    """The second family as printed, whose second term differentiates ``u_{n-1}`` along ``x_m``."""

    value = u_jet(n - 1, m).scale(Fraction(1, m)) - u_jet(n - 1, m).scale(Fraction(1, n))
    for k in range(1, m - 1):
        value = value + (u_var(m - k - 1) * u_jet(n - 1, k)).scale(Fraction(1, k))
    for k in range(1, n - 1):
        value = value - (u_var(n - k - 1) * u_jet(m - 1, k)).scale(Fraction(1, k))
    return value


def darboux_findings(nmax: int) -> List[Finding]:
    mismatched = [
        (n, m)
        for n in range(2, nmax + 1)
        for m in range(2, nmax + 1)
        if not (printed_darboux_second(n, m) - second_family(n, m, _jet_entry)).is_zero
    ]
    if not mismatched:
        return []
    n, m = mismatched[0]
    return [
        Finding(
            code="darboux-second-family",
            message=(
                f"printed second family differs at {len(mismatched)} index pairs; "
                "its second term should differentiate u[m-1] along x[n]"
            ),
            printed=canonical_string(printed_darboux_second(n, m)),
            derived=canonical_string(second_family(n, m, _jet_entry)),
        )
    ]


def darboux_residuals(system: PDESystem, rewriter: Optional[DkpRewriter] = None) -> Dict[str, Polynomial]:
    """Each Darboux equation reduced by the dKP rewrite set."""

    rewriter = rewriter or DkpRewriter()
    return {name: rewriter.reduce(eq) for name, eq in system.named().items()}


__all__ = [
    "EquivalenceReport",
    "RestrictionDecomposition",
    "alpha_closed_form",
    "beta_closed_form",
    "bracket",
    "darboux_findings",
    "darboux_residuals",
    "darboux_system",
    "equivalence_J_vs_Delta",
    "first_family",
    "h_star",
    "ideal_bracket_residue",
    "induced_jstar",
    "jacobi_defect",
    "jstar_consistency",
    "linear_ansatz_constraints",
    "printed_darboux_second",
    "restriction_decomposition",
    "second_family",
    "vector_field",
]
