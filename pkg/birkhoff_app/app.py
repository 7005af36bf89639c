"""Sweep runner bootstrap: the verb registry and run dispatch."""

from __future__ import annotations

import difflib
import logging
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from birkhoff_app.config import BirkhoffConfig
from birkhoff_app.logging_config import configure_logging, get_logger, log_event, operation_context
from birkhoff_app.sweeps import SWEEPS, Sweep
from logic.validation import Report, RunConfig, validation_failure
from models.errors import ConfigurationError, ParseError, UnknownVerbError
from models.text_format import parse_polynomial
from tools.observability import instrument_sweep
from tools.reporting import render, write_report

LOGGER = get_logger(__name__)

VERB_SUMMARIES = {
    "verify closure": "closure constraints from series products against the closed form",
    "verify h-symmetry": "n H[i,n] - i H[n,i] modulo the closure relations",
    "derive currents": "p[n] in the generators of the stratum",
    "derive curve": "the first-stratum cubic from series and its mu-form",
    "derive tangent": "linearized closure items and the symmetry relations",
    "derive dkp": "dKP flows at level 1 or 2 from tangent items",
    "verify cocycle": "cocycle defects of coboundaries and of the dKP cocycle",
    "verify coboundary": "the tangent cocycle as the coboundary of a solved linear map",
    "verify jacobi": "Jacobi sums for the Darboux and jet-ansatz tables",
    "verify poisson-ideal": "bracket of canonical generators and the J* decomposition",
    "verify ansatz-constraints": "the linear tensor-ansatz constraint families",
    "verify equivalence": "J -> Delta constraints modulo tangent, symmetry and closure",
    "derive darboux-system": "quasilinear system in Darboux coordinates modulo dKP",
    "derive hirota": "dispersionless Hirota-Miwa equations and exactness conditions",
    "verify tau-substitution": "closure items under H[i,m] = -(1/m) Fhess[i,m]",
    "derive stratum1-hierarchy": "x4-flows of mu0..mu4 from the first-stratum bracket",
}


class BirkhoffApp:
    """Wires the sweep registry to configuration, logging and report output."""

    def __init__(self, settings: BirkhoffConfig | None = None) -> None:
        self.settings = settings or BirkhoffConfig.from_env()
        configure_logging(self.settings.log_level)
        self.sweeps: Dict[str, Sweep] = {
            verb: instrument_sweep(verb)(sweep) for verb, sweep in SWEEPS.items()
        }

    def verbs(self) -> List[str]:
        return list(self.sweeps)

    def list_verbs(self) -> str:
        width = max(len(verb) for verb in self.sweeps)
        lines = [f"  {verb.ljust(width)}  {VERB_SUMMARIES.get(verb, '')}" for verb in self.sweeps]
        return "verbs:\n" + "\n".join(lines)

    def suggest(self, verb: str) -> Optional[str]:
        matches = difflib.get_close_matches(verb, self.verbs(), n=1, cutoff=0.5)
        return matches[0] if matches else None

    def build_config(self, verb: str, **options: Any) -> RunConfig:
        """Validate one run; ``threads`` falls back to the process settings."""

        if verb not in self.sweeps:
            raise UnknownVerbError(verb, self.suggest(verb))
        options = {key: value for key, value in options.items() if value is not None}
        options.setdefault("threads", self.settings.threads)
        try:
            config = RunConfig(verb=verb, **options)
        except ValidationError as exc:
            payload = validation_failure(f"invalid options for '{verb}'", exc)
            raise ConfigurationError(payload["message"], details=payload["details"]) from exc
        if config.gauge_v0:
            try:
                parse_polynomial(config.gauge_v0)
            except ParseError as exc:
                raise ConfigurationError(f"--gauge-v0: {exc}") from exc
        return config

    def run(self, config: RunConfig) -> Report:
        if config.verb not in self.sweeps:
            raise UnknownVerbError(config.verb, self.suggest(config.verb))
        with operation_context(config.verb, threads=config.threads):
            report = self.sweeps[config.verb](config, self.settings)
            sealed = report.sealed()
            log_event(
                LOGGER,
                logging.INFO,
                "report_sealed",
                verb=config.verb,
                digest=sealed.digest,
                exit_code=sealed.exit_code,
            )
            return sealed

    def emit(self, report: Report, config: RunConfig) -> tuple[str, Optional[str]]:
        """Render ``report``; return the text and the path written, if any."""

        text = render(report, config.format)
        path = write_report(text, config.out, self.settings.output_dir)
        return text, str(path) if path else None


__all__ = ["BirkhoffApp", "VERB_SUMMARIES"]
