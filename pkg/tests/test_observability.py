from pathlib import Path

import json
import logging
import sys

sys.path.append(str(Path(__file__).resolve().parents[1]))

from birkhoff_app.logging_config import JsonFormatter, correlation_context, log_event, summarize_for_log
from logic.validation import Report, RunConfig
from tools.observability import instrument_sweep


def test_long_payloads_are_summarized():
    text = "H[1,1]*" * 100
    assert summarize_for_log(text).endswith(f"({len(text)} chars)")
    summary = summarize_for_log(list(range(20)))
    assert summary[-1] == "... (12 more)"
    assert summarize_for_log({"n": 3}) == {"n": 3}


def test_json_formatter_carries_event_and_correlation_id(caplog):
    logger = logging.getLogger("birkhoff.test")
    with caplog.at_level(logging.INFO, logger="birkhoff.test"):
        with correlation_context("run-1"):
            log_event(logger, logging.INFO, "sweep_started", verb="verify closure")
    record = caplog.records[-1]
    payload = json.loads(JsonFormatter().format(record))
    assert payload["event"] == "sweep_started"
    assert payload["correlation_id"] == "run-1"
    assert payload["verb"] == "verify closure"


def test_instrumented_sweep_stamps_elapsed_time(caplog):
    @instrument_sweep("verify closure")
    def sweep(config, settings):
        return Report(verb=config.verb)

    with caplog.at_level(logging.INFO, logger="tools.observability"):
        report = sweep(RunConfig(verb="verify closure"), None)
    assert report.elapsed_ms >= 0
    events = [getattr(record, "event", "") for record in caplog.records]
    assert "sweep_started" in events
    assert "sweep_completed" in events
