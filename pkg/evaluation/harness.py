"""Lightweight evaluation harness for the acceptance scenarios."""

from __future__ import annotations

from typing import Dict, List, Optional

from birkhoff_app.app import BirkhoffApp
from birkhoff_app.config import BirkhoffConfig
from evaluation.scenarios import SCENARIOS, EvaluationScenario
from logic.schur import SchurTable
from models.errors import BirkhoffError


def _schur_result(scenario: EvaluationScenario) -> Dict[str, object]:
    table = SchurTable.build(int(scenario.options.get("nmax", 10)))
    defects = {("dP", *key): poly for key, poly in table.derivative_defects().items()}
    defects.update({("p*", *key): poly for key, poly in table.pstar_chain_defects().items()})
    nonzero = sorted(str(key) for key, poly in defects.items() if not poly.is_zero)
    checks = {"items_zero": not nonzero, "min_items": len(defects) >= scenario.min_items}
    return {
        "scenario": scenario.name,
        "passed": all(checks.values()),
        "checks": checks,
        "items_total": len(defects),
        "nonzero": nonzero,
    }


def run_scenario(scenario: EvaluationScenario, app: Optional[BirkhoffApp] = None) -> Dict[str, object]:
    """Run a scenario twice, once single-threaded and once on two workers."""

    if scenario.verb is None:
        return _schur_result(scenario)
    app = app or BirkhoffApp(BirkhoffConfig())
    try:
        config = app.build_config(scenario.verb, **{**scenario.options, "threads": 1})
        first = app.run(config)
        second = app.run(config.model_copy(update={"threads": 2}))
    except BirkhoffError as exc:
        return {
            "scenario": scenario.name,
            "passed": False,
            "checks": {"completed": False},
            "error": str(exc),
        }

    checks: Dict[str, bool] = {
        "completed": True,
        "deterministic": first.digest == second.digest,
        "min_items": first.items_total >= scenario.min_items,
    }
    if scenario.expected_exit is not None:
        checks["exit_code"] = first.exit_code == scenario.expected_exit
    if scenario.expected_output:
        checks["output"] = all(line in first.output for line in scenario.expected_output)
    return {
        "scenario": scenario.name,
        "passed": all(checks.values()),
        "checks": checks,
        "items_total": first.items_total,
        "items_zero": first.items_zero,
        "findings": [finding.code for finding in first.findings],
        "digest": first.digest,
    }


def run_evaluation_suite(include_slow: bool = False) -> List[Dict[str, object]]:
    app = BirkhoffApp(BirkhoffConfig())
    return [
        run_scenario(scenario, app)
        for scenario in SCENARIOS
        if include_slow or not scenario.slow
    ]


def run_smoke_checks(include_slow: bool = False) -> List[str]:
    results = run_evaluation_suite(include_slow)
    return [f"{result['scenario']}: {'passed' if result['passed'] else 'failed'}" for result in results]


__all__ = ["run_evaluation_suite", "run_scenario", "run_smoke_checks"]
