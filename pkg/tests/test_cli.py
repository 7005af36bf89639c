"""End-to-end checks of the ``birkhoff`` command line."""

from pathlib import Path

import json
import sys

import pytest

sys.path.append(str(Path(__file__).resolve().parents[1]))

from birkhoff_app.app import BirkhoffApp
from birkhoff_app.cli import main, parse_args
from birkhoff_app.config import BirkhoffConfig

SMALL_CLOSURE = ["verify", "closure", "--jmax", "2", "--kmax", "2", "--mmax", "2"]


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    for name in ("APP_ENV", "APP_CONFIG_PATH", "BIRKHOFF_THREADS", "BIRKHOFF_OUTPUT_DIR", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


def test_no_arguments_lists_the_verbs(capsys):
    assert main([]) == 0
    out = capsys.readouterr().out
    assert "verify closure" in out
    assert "derive stratum1-hierarchy" in out


def test_list_verb(capsys):
    assert main(["list"]) == 0
    assert "derive hirota" in capsys.readouterr().out


def test_help_exits_cleanly(capsys):
    assert main(["verify", "closure", "--help"]) == 0
    assert "--jmax" in capsys.readouterr().out


def test_unknown_verb_suggests_a_neighbour(capsys):
    assert main(["verify", "closur"]) == 1
    assert "did you mean 'verify closure'" in capsys.readouterr().err


def test_unknown_group_is_a_usage_error(capsys):
    assert main(["prove", "closure"]) == 1
    assert "unknown verb" in capsys.readouterr().err


def test_small_closure_run_emits_a_report(capsys):
    assert main(SMALL_CLOSURE) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    assert payload["verb"] == "verify closure"
    assert payload["items_total"] == payload["items_zero"] == 8
    assert payload["bounds"]["order"] == 8
    assert len(payload["digest"]) == 64


def test_digest_is_stable_across_runs(capsys):
    main(SMALL_CLOSURE)
    first = json.loads(capsys.readouterr().out)
    main(SMALL_CLOSURE + ["--threads", "2"])
    second = json.loads(capsys.readouterr().out)
    assert first["digest"] == second["digest"]


def test_report_written_to_out(tmp_path, capsys):
    target = tmp_path / "reports" / "closure.json"
    assert main(SMALL_CLOSURE + ["--out", str(target)]) == 0
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "report written to" in captured.err
    assert json.loads(target.read_text())["verb"] == "verify closure"


def test_order_below_the_probed_degree_is_rejected(capsys):
    assert main(["verify", "closure", "--order", "1"]) == 1
    assert "order" in capsys.readouterr().err


def test_bad_choice_is_a_usage_error():
    assert main(["derive", "dkp", "--level", "3"]) == 1


def test_malformed_gauge_is_rejected(capsys):
    assert main(["derive", "stratum1-hierarchy", "--gauge-v0", "p[1] +"]) == 1
    assert "--gauge-v0" in capsys.readouterr().err


def test_threads_environment_overrides_the_flag(monkeypatch):
    monkeypatch.setenv("BIRKHOFF_THREADS", "3")
    app = BirkhoffApp()
    verb, options = parse_args(SMALL_CLOSURE + ["--threads", "1"], app)
    assert verb == "verify closure"
    assert options["threads"] == 3


def test_non_integer_threads_environment_fails(monkeypatch, capsys):
    monkeypatch.setenv("BIRKHOFF_THREADS", "many")
    assert main(SMALL_CLOSURE) == 1
    assert "threads must be an integer" in capsys.readouterr().err


def test_text_format_prints_the_summary_line(capsys):
    assert main(SMALL_CLOSURE + ["--format", "text"]) == 0
    assert capsys.readouterr().out.startswith("verify closure: 8/8 expected-zero items vanish")


def test_build_config_defaults_threads_from_settings():
    app = BirkhoffApp(BirkhoffConfig(threads=4))
    config = app.build_config("verify closure", jmax=2, kmax=2, mmax=2, out=None)
    assert config.threads == 4
    assert config.order == 8


def test_digest_covers_the_resolved_bounds():
    app = BirkhoffApp(BirkhoffConfig())
    first = app.run(app.build_config("verify h-symmetry", nmax=2, seed=0))
    second = app.run(app.build_config("verify h-symmetry", nmax=2, seed=1))
    assert first.items == second.items
    assert first.output == second.output
    assert first.digest != second.digest


def test_order_is_only_checked_where_it_shapes_the_series():
    app = BirkhoffApp(BirkhoffConfig())
    config = app.build_config("verify cocycle", order=1, nmax=2)
    assert config.order == 1
    assert main(["verify", "closure", "--order", "1"]) == 1


def test_latex_format_renders_partial_derivatives(capsys):
    assert main(["derive", "dkp", "--level", "1", "--format", "latex"]) == 0
    output = json.loads(capsys.readouterr().out)["output"]
    equations = [line for line in output if "<-" not in line]
    assert equations
    assert all("\\partial_{x_{" in line for line in equations)
    assert not any("D[" in line for line in equations)
