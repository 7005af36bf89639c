"""Acceptance scenarios: one sweep per acceptance criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class EvaluationScenario:
    name: str
    description: str
    verb: Optional[str]
    options: Dict[str, object] = field(default_factory=dict)
    # None accepts any report; a sweep that cannot finish always fails.
    expected_exit: Optional[int] = 0
    min_items: int = 0
    expected_output: List[str] = field(default_factory=list)
    slow: bool = False


SCENARIOS: List[EvaluationScenario] = [
    EvaluationScenario(
        name="closure_big_cell",
        description="Series closure items equal the closed-form constraints for j, k, m <= 5.",
        verb="verify closure",
        options={"stratum": "big-cell", "jmax": 5, "kmax": 5, "mmax": 5},
        min_items=125,
    ),
    EvaluationScenario(
        name="currents_big_cell",
        description="p2..p5 in u-coordinates match the printed currents.",
        verb="derive currents",
        options={"stratum": "big-cell", "nmax": 5},
        min_items=4,
    ),
    EvaluationScenario(
        name="currents_sigma1",
        description="p4, p5 of the first stratum in its generator coordinates.",
        verb="derive currents",
        options={"stratum": "sigma1", "nmax": 5},
        expected_exit=None,
        min_items=2,
    ),
    EvaluationScenario(
        name="elliptic_curve",
        description="The first-stratum cubic re-derived from series and closure data.",
        verb="derive curve",
        options={"stratum": "sigma1"},
        min_items=1,
    ),
    EvaluationScenario(
        name="dkp_level_1",
        description="The two first-flow equations.",
        verb="derive dkp",
        options={"level": 1, "format": "latex"},
        min_items=2,
    ),
    EvaluationScenario(
        name="dkp_level_2",
        description="The three second-flow equations with a reported coefficient finding.",
        verb="derive dkp",
        options={"level": 2},
        min_items=3,
    ),
    EvaluationScenario(
        name="cocycles",
        description="Random coboundaries and the dKP coboundary have zero cocycle defect.",
        verb="verify cocycle",
        options={"nmax": 4, "seed": 7},
        min_items=1,
    ),
    EvaluationScenario(
        name="coboundary",
        description="The tangent cocycle is the coboundary of the solved linear map.",
        verb="verify coboundary",
        options={"nmax": 3},
        min_items=1,
    ),
    EvaluationScenario(
        name="poisson_ideal",
        description="Brackets of canonical generators stay in the ideal for 2 <= n, m <= 6.",
        verb="verify poisson-ideal",
        options={"nmax": 6},
        min_items=25,
    ),
    EvaluationScenario(
        name="jacobi",
        description="Jacobi sums vanish for the Darboux and jet-ansatz tables.",
        verb="verify jacobi",
        options={"nmax": 4},
        min_items=1,
    ),
    EvaluationScenario(
        name="equivalence_small",
        description="J -> Delta items reduce to zero for n, m <= 3.",
        verb="verify equivalence",
        options={"nmax": 3},
        min_items=1,
    ),
    EvaluationScenario(
        name="equivalence_headline",
        description="J -> Delta items reduce to zero for n, m <= 11.",
        verb="verify equivalence",
        options={"nmax": 11},
        min_items=1,
        slow=True,
    ),
    EvaluationScenario(
        name="tau_substitution",
        description="Substituted closure items match the Hirota-Miwa equations for i, k, m <= 4.",
        verb="verify tau-substitution",
        options={"jmax": 4, "kmax": 4, "mmax": 4, "nmax": 4},
        min_items=64,
    ),
    EvaluationScenario(
        name="stratum1_hierarchy",
        description="x4-flows of mu0..mu4 with v0 symbolic.",
        verb="derive stratum1-hierarchy",
        options={"stratum": "sigma1"},
        min_items=2,
    ),
    EvaluationScenario(
        name="schur_table",
        description="d/dt_k P_n = P_{n-k} and the p* chain through order 10.",
        verb=None,
        options={"nmax": 10},
    ),
]


__all__ = ["EvaluationScenario", "SCENARIOS"]
