import json

import pytest

from pibase import ordinal, settings
from pibase.cli import build_parser, run
from pibase.ordinal import CardinalLevel

from ..fixtures import SPACES
from ..unitutil import function_mock


def run_json(capsys, *argv) -> dict:
    assert run([*argv, "--format", "json"]) == 0
    return json.loads(capsys.readouterr().out)


class DescribeRun:
    @pytest.mark.parametrize(
        "argv, expected_output",
        (
            (["ord", "add", "w", "1"], "w + 1"),
            (["ord", "cmp", "w1", "w*5"], ">"),
            (["ord", "card", "w1*2+w"], "aleph_1"),
            (["sigma", "nf", "--kappa", "0", "w1+w*3+5"], "sigma(w1) + sigma(3) + 5"),
            (["pair", "w", "1"], "w + 2"),
            (["unpair", "w+2"], "(w, 1)"),
            (["phi", "eval", "--kappa", "0", "5"], "{}"),
        ),
    )
    def it_prints_results_as_text(self, capsys, argv, expected_output):
        exit_code = run(argv)

        captured = capsys.readouterr()
        assert exit_code == 0
        assert captured.out == expected_output + "\n"
        assert captured.err.startswith("config: ")

    def it_checks_condition2(self, capsys):
        exit_code = run(["phi", "check2", "--kappa", "0", "--delta", "w", "--samples", "50"])

        assert exit_code == 0
        assert capsys.readouterr().out.startswith("PASS: ")

    def it_wraps_json_results_in_a_versioned_document(self, capsys):
        document = run_json(capsys, "ord", "add", "w", "1")

        assert document == {
            "schema": "pibase/ord/v1",
            "config": {"a": "w", "b": "1", "kappa": 0, "max_level": 5, "op": "add"},
            "result": {"value": "w + 1"},
        }

    def and_it_resolves_the_max_level_from_the_environment(self, capsys, monkeypatch):
        monkeypatch.setenv(settings.MAX_LEVEL_ENV_VAR, "7")

        document = run_json(capsys, "ord", "normalize", "w7+w7")

        assert document["config"]["max_level"] == 7
        assert document["result"] == {"value": "w7*2"}

    def it_passes_the_arguments_to_the_library(self, request, capsys):
        sigma_eval_ = function_mock(request, "pibase.cli.sigma_eval")
        sigma_eval_.return_value = ordinal.OMEGA

        exit_code = run(["sigma", "eval", "--kappa", "1", "w1"])

        assert exit_code == 0
        sigma_eval_.assert_called_once_with(CardinalLevel.aleph(1), ordinal.parse("w1"))
        assert capsys.readouterr().out == "w\n"

    @pytest.mark.parametrize(
        "argv, expected_message",
        (
            (["ord", "normalize", "w+"], "position"),
            (["top", "min-order", "--all-up-to", "5"], "limited to 4 points"),
            (["top", "check", "--space", "sierpinski"], "is not regular"),
            (["top", "invariants", "--space", "file:./no/such.json"], "Cannot read"),
        ),
    )
    def it_exits_with_1_on_domain_errors(self, capsys, argv, expected_message):
        exit_code = run(argv)

        captured = capsys.readouterr()
        assert exit_code == 1
        assert captured.out == ""
        assert captured.err.startswith("pibase: error: ")
        assert expected_message in captured.err

    def and_it_reports_broken_closures_as_domain_errors(self, request, capsys):
        kuratowski_violations_ = function_mock(request, "pibase.cli.kuratowski_violations")
        kuratowski_violations_.return_value = ["cl(empty) is not empty"]

        exit_code = run(["top", "invariants", "--space", "discrete:2"])

        captured = capsys.readouterr()
        assert exit_code == 1
        assert captured.err.startswith("pibase: error: ")
        assert "breaks cl(empty) is not empty" in captured.err
        assert "Traceback" not in captured.err

    @pytest.mark.parametrize(
        "env_var, value",
        ((settings.MAX_LEVEL_ENV_VAR, "-2"), (settings.LOG_LEVEL_ENV_VAR, "LOUD")),
    )
    def and_it_exits_with_1_on_bad_configuration(self, capsys, monkeypatch, env_var, value):
        monkeypatch.setenv(env_var, value)

        exit_code = run(["ord", "normalize", "w"])

        assert exit_code == 1
        assert env_var in capsys.readouterr().err

    @pytest.mark.parametrize(
        "argv",
        (
            [],
            ["ord", "pow", "w"],
            ["top"],
            ["top", "build", "--space", "discrete:2", "--steps", "-1"],
            ["sigma", "nf", "w", "--kappa", "x"],
            ["fdelta", "--delta", "w", "5"],
            ["fdelta-witness", "--delta", "w"],
        ),
    )
    def it_exits_with_2_on_usage_errors(self, capsys, argv):
        assert run(argv) == 2
        assert "usage:" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "argv, expected_message",
        (
            (["ord", "add", "w"], "ord add needs two ordinals"),
            (["ord", "cmp", "w"], "ord cmp needs two ordinals"),
            (["phi", "eval"], "phi eval needs an ordinal"),
            (["phi", "check2"], "phi check2 needs --delta"),
            (["phi", "witness", "--delta", "w"], "phi witness needs --pattern"),
            (["phi", "witness", "--delta", "w", "(3,0)"], "takes no positional ordinal"),
            (["top", "lemma24", "extract"], "needs --space"),
            (["top", "min-order"], "needs --space or --all-up-to"),
        ),
    )
    def and_it_exits_with_2_on_missing_operands(self, capsys, argv, expected_message):
        exit_code = run(argv)

        captured = capsys.readouterr()
        assert exit_code == 2
        assert captured.out == ""
        assert "usage:" in captured.err
        assert expected_message in captured.err

    def it_prints_its_version(self, capsys):
        assert run(["--version"]) == 0
        assert capsys.readouterr().out.startswith("pibase ")


class DescribePatternCommands:
    def it_evaluates_f_delta_on_its_witness(self, capsys):
        argv = ["fdelta-witness", "--kappa", "0", "--delta", "w", "--pattern", "(3,0)"]
        assert run(argv) == 0
        xi = capsys.readouterr().out.strip()

        exit_code = run(["fdelta", "--kappa", "0", "--delta", "w", "--xi", xi])

        assert exit_code == 0
        assert capsys.readouterr().out == "{(3,0)}\n"

    def it_evaluates_phi_on_its_witness(self, capsys):
        argv = ["phi", "witness", "--kappa", "0", "--delta", "w", "--pattern", "(3,0)"]
        assert run(argv) == 0
        xi = capsys.readouterr().out.strip()

        exit_code = run(["phi", "eval", "--kappa", "0", xi])

        assert exit_code == 0
        assert ordinal.parse(xi) < ordinal.OMEGA
        assert capsys.readouterr().out == "{(3,0)}\n"

    def it_echoes_the_pattern_option_in_the_config(self, capsys):
        document = run_json(
            capsys, "fdelta-witness", "--kappa", "0", "--delta", "w", "--pattern", "(3,0)"
        )

        assert document["schema"] == "pibase/fdelta-witness/v1"
        assert document["config"]["pattern"] == "(3,0)"
        assert document["config"]["bound"] is None


class DescribeTopologyCommands:
    def it_reports_invariants(self, capsys):
        exit_code = run(["top", "invariants", "--space", "file:" + SPACES.SIERPINSKI])

        assert exit_code == 0
        assert capsys.readouterr().out.splitlines() == [
            "|X| = 2",
            "d = 1  witness: a",
            "s = 1  witness: a",
            "t = 1  witness: a a",
            "F = 1  witness: a",
            "pi_character = 1",
        ]

    def it_checks_and_finds_free_sequences(self, capsys):
        run(["top", "free-seq", "--space", "sierpinski", "--sequence", "b,a"])
        checked = capsys.readouterr().out
        run(["top", "free-seq", "--space", "sierpinski"])
        found = capsys.readouterr().out

        assert checked == "(b,a) is not a free sequence\n"
        assert found == "F = 1: (a)\n"

    def it_extracts_with_a_given_family(self, capsys):
        exit_code = run(
            ["top", "lemma24", "extract", "--space", "discrete:2", "--family", "a;b"]
        )

        assert exit_code == 0
        assert capsys.readouterr().out == "FreeSeq: (b)\n"

    def it_tabulates_lemma24_by_brute_force(self, capsys):
        document = run_json(capsys, "top", "lemma24", "brute", "--points", "2")

        assert document["schema"] == "pibase/top-lemma24/v1"
        assert document["result"]["topologies"] == 4
        assert len(document["result"]["rows"]) == 12

    def it_builds_prefixes(self, capsys):
        exit_code = run(["top", "build", "--space", "discrete:3"])

        assert exit_code == 0
        assert capsys.readouterr().out.splitlines() == [
            "0: a [dense] {a}",
            "1: b [dense] {b}",
            "2: c [dense] {c}",
            "complete: True",
        ]

    def and_it_builds_the_same_document_every_time(self, capsys):
        argv = ("top", "build", "--space", "rationals", "--steps", "12", "--format", "json")
        run(list(argv))
        first = capsys.readouterr().out
        run(list(argv))
        second = capsys.readouterr().out

        assert first == second
        assert json.loads(first)["schema"] == "pibase/top-build/v1"

    def it_checks_prefixes(self, capsys):
        document = run_json(capsys, "top", "check", "--space", "discrete:3")

        assert document["schema"] == "pibase/top-check/v1"
        assert document["result"]["passed"] is True
        assert document["config"]["steps"] == 100

    def it_reports_the_min_pibase_order(self, capsys):
        document = run_json(capsys, "top", "min-order", "--space", "discrete:3")

        assert document["result"] == {
            "d": 3,
            "s": 3,
            "m": 1,
            "d<=m*s": True,
            "d<=(m+1)*s": True,
            "star_premise": False,
            "pibase": ["{a}", "{b}", "{c}"],
        }

    def and_it_tabulates_small_spaces(self, capsys):
        document = run_json(capsys, "top", "min-order", "--all-up-to", "2")

        assert len(document["result"]["rows"]) == 1 + 1 + 4


class DescribeBuildParser:
    def it_routes_nested_commands(self):
        args = build_parser().parse_args(["top", "check", "--space", "rationals", "--steps", "3"])

        assert args.command == "top-check"
        assert args.steps == 3
        assert args.kappa_analog is None
        assert args.kappa == 0
