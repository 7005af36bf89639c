"""Command line for the ``birkhoff`` sweeps.

Usage::

    birkhoff <verify|derive> <name> [--stratum big-cell|sigma1] [--jmax N] ...
    birkhoff list

Exit status is 0 when every expected-zero item vanishes, 2 when one does not
(or a sweep cannot complete), and 1 for usage and configuration errors.
Findings are reported but never change the exit status.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from birkhoff_app.app import VERB_SUMMARIES, BirkhoffApp
from birkhoff_app.logging_config import get_logger, log_event
from models.errors import BirkhoffError, ConfigurationError, UnknownVerbError
from models.symbols import Stratum

LOGGER = get_logger(__name__)

GROUPS = ("verify", "derive")
OPTION_NAMES = (
    "stratum",
    "jmax",
    "kmax",
    "mmax",
    "nmax",
    "order",
    "level",
    "variant",
    "gauge_v0",
    "seed",
    "format",
    "out",
    "threads",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigurationError(f"{self.prog}: {message}")


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--stratum",
        choices=[stratum.value for stratum in Stratum],
        help="big-cell (default) or sigma1",
    )
    parser.add_argument("--jmax", type=int, help="upper bound of the first closure index")
    parser.add_argument("--kmax", type=int, help="upper bound of the second closure index")
    parser.add_argument("--mmax", type=int, help="upper bound of the probed negative degree")
    parser.add_argument("--nmax", type=int, help="upper bound of currents, flows and ansatz ranks")
    parser.add_argument("--order", type=int, help="series truncation (default mmax+jmax+kmax+2)")
    parser.add_argument("--level", type=int, choices=[1, 2], help="dKP level")
    parser.add_argument("--variant", choices=["derived", "printed"], help="Hirota variant")
    parser.add_argument("--gauge-v0", dest="gauge_v0", help="polynomial text fixing v[0]")
    parser.add_argument("--seed", type=int, help="seed for random coboundaries")
    parser.add_argument("--format", choices=["json", "text", "latex"], help="report format")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--threads", type=int, help="worker processes (BIRKHOFF_THREADS wins)")


def build_parser(verbs: Sequence[str]) -> argparse.ArgumentParser:
    parser = _Parser(prog="birkhoff", description="Exact sweeps over Birkhoff strata.")
    groups = parser.add_subparsers(dest="group", metavar="{verify,derive,list}")
    groups.add_parser("list", help="list the available verbs")
    for group in GROUPS:
        group_parser = groups.add_parser(group, help=f"{group} sweeps")
        names = group_parser.add_subparsers(dest="name", metavar="NAME")
        for verb in verbs:
            head, _, name = verb.partition(" ")
            if head != group:
                continue
            verb_parser = names.add_parser(name, help=VERB_SUMMARIES.get(verb, ""))
            verb_parser.description = VERB_SUMMARIES.get(verb, "")
            _add_run_options(verb_parser)
    return parser


def _resolve_verb(tokens: List[str], app: BirkhoffApp) -> Optional[str]:
    """Catch unknown verbs before argparse so they get a suggestion and exit 1."""

    head = tokens[0]
    if head in ("list", "-h", "--help"):
        return None
    if head not in GROUPS:
        raise UnknownVerbError(head, app.suggest(" ".join(tokens[:2])))
    if len(tokens) < 2 or tokens[1].startswith("-"):
        return None
    verb = f"{head} {tokens[1]}"
    if verb not in app.sweeps:
        raise UnknownVerbError(verb, app.suggest(verb))
    return verb


def parse_args(tokens: List[str], app: BirkhoffApp) -> Tuple[str, Dict[str, Any]]:
    _resolve_verb(tokens, app)
    namespace = build_parser(app.verbs()).parse_args(tokens)
    if namespace.group == "list":
        return "list", {}
    if namespace.group is None or getattr(namespace, "name", None) is None:
        raise ConfigurationError("a verb is required; run 'birkhoff list'")
    options = {name: getattr(namespace, name) for name in OPTION_NAMES}
    if os.getenv("BIRKHOFF_THREADS"):
        options["threads"] = app.settings.threads
    return f"{namespace.group} {namespace.name}", options


def _report_error(exc: BirkhoffError) -> None:
    print(f"birkhoff: {exc}", file=sys.stderr)
    for detail in getattr(exc, "details", []):
        location = ".".join(str(part) for part in detail.get("loc", []))
        print(f"  {location}: {detail.get('msg', '')}", file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    tokens = list(sys.argv[1:] if argv is None else argv)
    try:
        app = BirkhoffApp()
    except ConfigurationError as exc:
        _report_error(exc)
        return 1

    if not tokens:
        print(app.list_verbs())
        print(build_parser(app.verbs()).format_usage(), end="")
        return 0

    try:
        verb, options = parse_args(tokens, app)
        if verb == "list":
            print(app.list_verbs())
            return 0
        config = app.build_config(verb, **options)
        report = app.run(config)
        text, path = app.emit(report, config)
    except SystemExit as exc:
        # argparse --help
        return int(exc.code or 0)
    except (UnknownVerbError, ConfigurationError) as exc:
        _report_error(exc)
        return 1
    except BirkhoffError as exc:
        log_event(LOGGER, logging.ERROR, "sweep_aborted", error=str(exc), kind=type(exc).__name__)
        _report_error(exc)
        return 2

    if path is None:
        sys.stdout.write(text)
    else:
        print(f"report written to {path}", file=sys.stderr)
    return report.exit_code


__all__ = ["build_parser", "main", "parse_args"]
