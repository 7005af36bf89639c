"""One function per CLI verb: run the computation, collect expected-zero items.

Every sweep returns an unsealed :class:`Report`; the app stamps the digest.
Items are the quantities that must vanish; ``output`` holds the rendered
derivations; printed-formula mismatches go to ``findings``.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Optional, Tuple

from birkhoff_app.config import BirkhoffConfig
from logic.closure import (
    BigCellClosureReducer,
    closure_constraints,
    reducer_for,
    template_constraints,
    verify_h_symmetry,
)
from logic.cohomology import (
    Expansion,
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
from logic.hirota import exactness_conditions, hirota_equation, tau_substitution_check
from logic.poisson import (
    alpha_closed_form,
    beta_closed_form,
    darboux_findings,
    darboux_residuals,
    darboux_system,
    equivalence_J_vs_Delta,
    ideal_bracket_residue,
    jacobi_defect,
    jstar_consistency,
    linear_ansatz_constraints,
    restriction_decomposition,
)
from logic.strata_varieties import derive_curve, express_current, mu_dictionary, mu_form_findings
from logic.stratum1 import stratum1_coisotropy
from logic.tangent import (
    DkpRewriter,
    TangentReducer,
    derive_dkp_flow,
    dkp_residuals,
    symmetry_relations,
    tangent_system,
)
from logic.validation import FindingModel, ItemResult, Report, RunConfig
from models.constraints import ConstraintSystem, Finding
from models.laurent import StratumBasis
from models.phase_space import darboux, jet_ansatz
from models.polynomial import Polynomial
from models.structure_constants import StructureConstants
from models.symbols import Stratum
from models.text_format import canonical_string, latex_string, parse_polynomial

COCYCLE_MAPS = 2


def _item(family: str, indices: Iterable[int], poly: Polynomial) -> ItemResult:
    return ItemResult(
        family=family, indices=list(indices), value=canonical_string(poly), is_zero=poly.is_zero
    )


def _system_items(family: str, system: ConstraintSystem) -> List[ItemResult]:
    return [_item(family, key, poly) for key, poly in system.items.items()]


def _expansion_item(family: str, indices: Iterable[int], vector: Expansion) -> ItemResult:
    nonzero = {l: c for l, c in vector.items() if not c.is_zero}
    text = "; ".join(f"p[{l}]: {canonical_string(c)}" for l, c in sorted(nonzero.items())) or "0"
    return ItemResult(family=family, indices=list(indices), value=text, is_zero=not nonzero)


def _findings(findings: Iterable[Finding]) -> List[FindingModel]:
    return [FindingModel(**finding.to_json()) for finding in findings]


def _writer(config: RunConfig):
    return latex_string if config.format == "latex" else canonical_string


def _report(
    config: RunConfig,
    items: List[ItemResult],
    output: Optional[List[str]] = None,
    findings: Iterable[Finding] = (),
) -> Report:
    return Report(
        verb=config.verb,
        bounds=config.bounds(),
        items=items,
        output=output or [],
        findings=_findings(findings),
    )


def verify_closure(config: RunConfig, settings: BirkhoffConfig) -> Report:
    basis = StratumBasis(config.stratum, config.order)
    derived = closure_constraints(basis, config.jmax, config.kmax, config.mmax, workers=config.threads)
    template = template_constraints(config.stratum, config.jmax, config.kmax, config.mmax)
    items = [
        _item("closure", key, poly - template.items.get(key, Polynomial.zero()))
        for key, poly in derived.items.items()
    ]
    write = _writer(config)
    output = [f"closure{key}: {write(poly)} = 0" for key, poly in derived.items.items() if not poly.is_zero]
    return _report(config, items, output)


def verify_h_symmetry_sweep(config: RunConfig, settings: BirkhoffConfig) -> Report:
    reducer = BigCellClosureReducer(max_depth=settings.rewrite_depth)
    return _report(config, _system_items("h-symmetry", verify_h_symmetry(config.nmax, reducer)))


def derive_currents(config: RunConfig, settings: BirkhoffConfig) -> Report:
    stratum = config.stratum
    reducer = reducer_for(stratum, settings.rewrite_depth)
    first = 4 if stratum is Stratum.SIGMA1 else 2
    write = _writer(config)
    items: List[ItemResult] = []
    output: List[str] = []
    for n in range(first, max(config.nmax, 5) + 1):
        current = express_current(stratum, n, reducer)
        output.append(f"p[{n}] = {write(current.expression)}")
        if current.printed is not None:
            printed = reducer.reduce(current.printed) if stratum is Stratum.SIGMA1 else current.printed
            items.append(_item("current", (n,), printed - current.expression))
    return _report(config, items, output)


def derive_curve_sweep(config: RunConfig, settings: BirkhoffConfig) -> Report:
    derivation = derive_curve(order=config.order)
    write = _writer(config)
    items = [_item("curve-residual", (degree,), poly) for degree, poly in derivation.residuals.items()]
    output = [f"derived: {write(derivation.derived)} = 0", f"printed: {write(derivation.printed)} = 0"]
    output.extend(f"mu[{a}] = {write(value)}" for a, value in mu_dictionary(derivation.derived).items())
    return _report(config, items, output, list(derivation.findings) + mu_form_findings())


def derive_tangent(config: RunConfig, settings: BirkhoffConfig) -> Report:
    reducer = TangentReducer(max_depth=settings.rewrite_depth)
    system = tangent_system(config.jmax, config.kmax, config.mmax)
    symmetry = symmetry_relations(config.nmax, config.nmax)
    items = _system_items("tangent", system.map(reducer.reduce))
    items += _system_items("symmetry", symmetry.map(reducer.reduce))
    write = _writer(config)
    output = [f"tangent{key}: {write(poly)} = 0" for key, poly in system.items.items() if not poly.is_zero]
    return _report(config, items, output)


def derive_dkp(config: RunConfig, settings: BirkhoffConfig) -> Report:
    rewriter = DkpRewriter(max_depth=settings.rewrite_depth)
    derivation = derive_dkp_flow(config.level, rewriter.tangent.closure)
    residuals = dkp_residuals(config.level, rewriter)
    items = [_item(f"dkp-{config.level}:{name}", (i,), poly) for i, (name, poly) in enumerate(residuals.items())]
    output = derivation.system.render(latex=config.format == "latex")
    for name, multipliers in zip(derivation.system.names, derivation.system.multipliers):
        combination = " + ".join(f"{weight}*{label}" for label, weight in multipliers.items())
        output.append(f"{name} <- {combination}")
    return _report(config, items, output, derivation.findings)


def _cocycle_bounds(config: RunConfig) -> Tuple[int, int]:
    upper = min(config.nmax, 4)
    return upper, 2 * upper


def verify_cocycle(config: RunConfig, settings: BirkhoffConfig) -> Report:
    """Coboundaries of random linear maps are cocycles; so is the dKP cocycle modulo the flows."""

    upper, span = _cocycle_bounds(config)
    closure = BigCellClosureReducer(max_depth=settings.rewrite_depth)
    sc = u_structure_constants(span, closure)
    items: List[ItemResult] = []
    for offset in range(COCYCLE_MAPS):
        g = random_linear_map(2 * span, seed=config.seed + offset)
        psi = coboundary_cocycle(g, sc, span)
        for j in range(1, upper + 1):
            for k in range(1, upper + 1):
                for m in range(1, upper + 1):
                    items.append(
                        _expansion_item(f"coboundary-defect:{offset}", (j, k, m), cocycle_defect(psi, sc, j, k, m))
                    )
    rewriter = DkpRewriter(TangentReducer(closure, settings.rewrite_depth), settings.rewrite_depth)
    dkp_upper = min(upper, 3)
    psi = dkp_cocycle(2 * dkp_upper)
    for j in range(1, dkp_upper + 1):
        for k in range(1, dkp_upper + 1):
            for m in range(1, dkp_upper + 1):
                items.append(
                    _expansion_item("dkp-defect", (j, k, m), cocycle_defect(psi, sc, j, k, m, rewriter))
                )
    return _report(config, items)


def verify_coboundary(config: RunConfig, settings: BirkhoffConfig) -> Report:
    """The tangent cocycle equals the coboundary of the solved ``g``, modulo the tangent relations."""

    upper, span = _cocycle_bounds(config)
    tangent = TangentReducer(max_depth=settings.rewrite_depth)
    sc = StructureConstants.closed_form(Stratum.BIG_CELL, span).map(tangent.closure.reduce)
    psi = tangent_cocycle(span)
    g = g_from_tangent(psi, sc, span)
    items: List[ItemResult] = []
    for j in range(1, upper + 1):
        for k in range(j, upper + 1):
            residual = coboundary_decompose(psi, g, sc, j, k, tangent)
            items.append(_expansion_item("coboundary", (j, k), residual))
    tau_upper = min(upper, 3)
    for j in range(1, tau_upper + 1):
        for k in range(j, tau_upper + 1):
            difference = add(tau_coboundary(j, k, tau_upper), tau_coboundary_direct(j, k), -1)
            items.append(_expansion_item("tau-cocycle", (j, k), difference))
    write = _writer(config)
    output = [
        f"pi[{i}] = " + " + ".join(f"({write(c)})*p[{l}]" for l, c in sorted(g.value(i).items()))
        for i in range(1, min(span, 3) + 1)
        if g.value(i)
    ]
    return _report(config, items, output)


def verify_jacobi(config: RunConfig, settings: BirkhoffConfig) -> Report:
    items: List[ItemResult] = []
    upper = config.nmax
    for ps in (darboux(), jet_ansatz()):
        for l in range(1, upper + 1):
            for k in range(1, upper + 1):
                for j in range(1, upper + 1):
                    first, second = jacobi_defect(ps, l, k, j, upper)
                    items.append(_item(f"jacobi:{ps.name}:y", (l, k, j), first))
                    items.append(_item(f"jacobi:{ps.name}:q", (l, k, j), second))
    return _report(config, items)


def verify_poisson_ideal(config: RunConfig, settings: BirkhoffConfig) -> Report:
    upper = max(config.nmax, 2)
    items = [
        _item("ideal-bracket", (n, m), ideal_bracket_residue(n, m))
        for n in range(2, upper + 1)
        for m in range(2, upper + 1)
    ]
    items += _system_items("jstar-consistency", jstar_consistency(upper, upper))
    decomposition = restriction_decomposition(upper, upper)
    items += _system_items("restriction", decomposition.conditions(upper))
    for (l, k), alpha in decomposition.alpha.items():
        items.append(_item("alpha-closed-form", (l, k), alpha - alpha_closed_form(l, k)))
        items.append(_item("beta-closed-form", (l, k), decomposition.beta[(l, k)] - beta_closed_form(l, k)))
    return _report(config, items)


def verify_ansatz_constraints(config: RunConfig, settings: BirkhoffConfig) -> Report:
    system = linear_ansatz_constraints(config.nmax, config.nmax)
    items = [
        _item("antisymmetry", key, poly + system.items[(key[0], key[2], key[1])])
        for key, poly in system.items.items()
    ]
    write = _writer(config)
    output = [f"ansatz{key}: {write(poly)} = 0" for key, poly in system.items.items() if not poly.is_zero]
    return _report(config, items, output)


def verify_equivalence(config: RunConfig, settings: BirkhoffConfig) -> Report:
    report = equivalence_J_vs_Delta(config.nmax, workers=config.threads, max_depth=settings.rewrite_depth)
    items = _system_items("equivalence", report.reduced)
    output = [f"trace{key}: {', '.join(trace)}" for key, trace in report.traces.items()]
    return _report(config, items, output)


def derive_darboux_system(config: RunConfig, settings: BirkhoffConfig) -> Report:
    system = darboux_system(config.nmax, config.nmax)
    rewriter = DkpRewriter(max_depth=settings.rewrite_depth)
    residuals = darboux_residuals(system, rewriter)
    items = [_item("darboux", (i,), poly) for i, poly in enumerate(residuals.values())]
    write = _writer(config)
    output = [f"{name}: {write(eq)} = 0" for name, eq in system.named().items() if not eq.is_zero]
    return _report(config, items, output, darboux_findings(config.nmax))


def derive_hirota(config: RunConfig, settings: BirkhoffConfig) -> Report:
    write = _writer(config)
    output = [
        f"hirota({i}, {k}, {m}): {write(hirota_equation(i, k, m, config.variant))} = 0"
        for i in range(1, config.jmax + 1)
        for k in range(1, config.kmax + 1)
        for m in range(1, config.mmax + 1)
    ]
    items = _system_items("exactness", exactness_conditions(config.nmax))
    return _report(config, items, output)


def verify_tau_substitution(config: RunConfig, settings: BirkhoffConfig) -> Report:
    result = tau_substitution_check(config.jmax, config.kmax, config.mmax, workers=config.threads)
    items = _system_items("tau-substitution", result.residuals())
    items += _system_items("exactness", exactness_conditions(config.nmax))
    output = [
        f"factor{item.indices}: derived {item.factor}, printed {item.printed_factor}"
        for item in result.items
    ]
    return _report(config, items, output, result.findings)


def derive_stratum1_hierarchy(config: RunConfig, settings: BirkhoffConfig) -> Report:
    gauge = parse_polynomial(config.gauge_v0) if config.gauge_v0 else None
    hierarchy = stratum1_coisotropy(gauge)
    items = [_item(f"stratum1:{name}", (i,), poly) for i, (name, poly) in enumerate(hierarchy.residuals.items())]
    output = hierarchy.system.render(latex=config.format == "latex")
    return _report(config, items, output, hierarchy.findings)


Sweep = Callable[[RunConfig, BirkhoffConfig], Report]

SWEEPS: Dict[str, Sweep] = {
    "verify closure": verify_closure,
    "verify h-symmetry": verify_h_symmetry_sweep,
    "derive currents": derive_currents,
    "derive curve": derive_curve_sweep,
    "derive tangent": derive_tangent,
    "derive dkp": derive_dkp,
    "verify cocycle": verify_cocycle,
    "verify coboundary": verify_coboundary,
    "verify jacobi": verify_jacobi,
    "verify poisson-ideal": verify_poisson_ideal,
    "verify ansatz-constraints": verify_ansatz_constraints,
    "verify equivalence": verify_equivalence,
    "derive darboux-system": derive_darboux_system,
    "derive hirota": derive_hirota,
    "verify tau-substitution": verify_tau_substitution,
    "derive stratum1-hierarchy": derive_stratum1_hierarchy,
}


__all__ = ["SWEEPS", "Sweep"]
