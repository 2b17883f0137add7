"""End-to-end checks of the command-line interface."""

import json

import pytest

from likelic.cli import run

from conftest import fixture_path

SNOWBIRD = fixture_path("snowbird.ctx")
MORTALITY = fixture_path("mortality.ctx")

SUBCOMMAND_FLAGS = {
    "infer": ["--context", "--from", "--to", "--format"],
    "explain": ["--context", "--from", "--to"],
    "allpairs": ["--context", "--format"],
    "propagate": ["--context", "--source", "--mode"],
    "scenario": ["--context", "--scenarios", "--compare", "--rows", "--mode"],
    "scale": ["--prob", "--boundaries", "--capacity", "--base"],
    "learn": ["--context", "--script"],
    "export-dot": ["--context", "--valuation"],
    "demo-dice": [],
}


def invoke(capsys, *argv):
    status = run(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestInfer:
    def test_text(self, capsys):
        status, out, _ = invoke(
            capsys, "infer", "--context", SNOWBIRD,
            "--from", "Snowbird", "--to", "death",
        )
        assert status == 0
        lines = out.splitlines()
        assert lines[0] == "3 (neutral)"
        assert lines[1] == (
            "Snowbird -(5)-> skiing -(4)-> ski-accident -(3)-> death : 3"
        )

    def test_json_round_trips_byte_identically(self, capsys):
        status, out, _ = invoke(
            capsys, "infer", "--context", SNOWBIRD,
            "--from", "Snowbird", "--to", "death", "--format", "json",
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["likeliness"] == 3
        assert payload["witness"] == ["Snowbird", "skiing", "ski-accident", "death"]
        assert json.dumps(payload, indent=2, sort_keys=True) + "\n" == out

    def test_unknown_vertex_is_a_domain_error(self, capsys):
        status, out, err = invoke(
            capsys, "infer", "--context", SNOWBIRD,
            "--from", "Snowbird", "--to", "nowhere",
        )
        assert status == 1
        assert "nowhere" in err
        assert out == ""

    def test_unreachable_pair(self, capsys):
        status, out, _ = invoke(
            capsys, "infer", "--context", SNOWBIRD,
            "--from", "death", "--to", "Snowbird",
        )
        assert status == 0
        assert out.splitlines() == ["0 (impossible)", "no path"]


class TestExplainCommand:
    def test_chain(self, capsys):
        status, out, _ = invoke(
            capsys, "explain", "--context", SNOWBIRD,
            "--from", "skiing", "--to", "death",
        )
        assert status == 0
        assert out == "skiing -(4)-> ski-accident -(3)-> death : 3\n"


class TestAllPairs:
    def test_json(self, capsys):
        status, out, _ = invoke(
            capsys, "allpairs", "--context", SNOWBIRD, "--format", "json",
        )
        assert status == 0
        payload = json.loads(out)
        labels = payload["labels"]
        assert labels == sorted(labels)
        i = labels.index("Snowbird")
        j = labels.index("death")
        assert payload["matrix"][i][j] == 3
        assert payload["matrix"][i][i] == 6
        assert json.dumps(payload, indent=2, sort_keys=True) + "\n" == out

    def test_text_is_aligned(self, capsys):
        status, out, _ = invoke(capsys, "allpairs", "--context", SNOWBIRD)
        assert status == 0
        assert len(out.splitlines()) == 7  # header plus one row per vertex


class TestPropagateCommand:
    def test_wavefront(self, capsys):
        status, out, _ = invoke(
            capsys, "propagate", "--context", SNOWBIRD,
            "--source", "Snowbird=4", "--mode", "wavefront",
        )
        assert status == 0
        assert "accident: 1 (conceivable)" in out.splitlines()

    def test_bad_source_spec_is_a_usage_error(self, capsys):
        status, _, err = invoke(
            capsys, "propagate", "--context", SNOWBIRD, "--source", "Snowbird",
        )
        assert status == 2
        assert "LABEL=GRADE" in err


class TestScenarioCommand:
    def test_single_row(self, capsys):
        status, out, _ = invoke(
            capsys, "scenario", "--context", MORTALITY,
            "--compare", "default,Reykjavik,Istanbul,trip",
            "--rows", "in war",
        )
        assert status == 0
        assert out == "in war: 1 0 0 1\n"

    def test_multiple_rows_in_requested_order(self, capsys):
        status, out, _ = invoke(
            capsys, "scenario", "--context", MORTALITY,
            "--compare", "default,Reykjavik,Istanbul,trip",
            "--rows", "at home in bed,in war,by forces of nature",
        )
        assert status == 0
        assert out.splitlines() == [
            "at home in bed: 4 1 1 0",
            "in war: 1 0 0 1",
            "by forces of nature: 1 4 1 2",
        ]

    def test_rows_default_to_all_valued_vertices(self, capsys):
        status, out, _ = invoke(
            capsys, "scenario", "--context", MORTALITY, "--compare", "trip",
        )
        assert status == 0
        assert len(out.splitlines()) >= 8

    def test_unknown_scenario(self, capsys):
        status, _, err = invoke(
            capsys, "scenario", "--context", MORTALITY, "--compare", "Mars",
        )
        assert status == 1
        assert "Mars" in err

    def test_separate_scenarios_file(self, capsys, tmp_path):
        extra = tmp_path / "extra.scn"
        extra.write_text(
            "scenario nowhere-special\nobserve trip = 6\nend\n",
            encoding="utf-8",
        )
        status, out, _ = invoke(
            capsys, "scenario", "--context", MORTALITY,
            "--scenarios", str(extra),
            "--compare", "nowhere-special", "--rows", "by forces of nature",
        )
        assert status == 0
        assert out == "by forces of nature: 1 2\n"


class TestScaleCommand:
    def test_prob(self, capsys):
        status, out, _ = invoke(
            capsys, "scale", "--prob", "0.5", "--base", "1e-9"
        )
        assert status == 0
        assert out == "3 (neutral)\n"

    def test_boundaries(self, capsys):
        status, out, _ = invoke(capsys, "scale", "--boundaries", "--base", "1e-9")
        assert status == 0
        lines = out.splitlines()
        assert len(lines) == 6
        assert lines[0] == "c1 = 1e-09"

    def test_capacity(self, capsys):
        status, out, _ = invoke(capsys, "scale", "--capacity", "3", "--base", "1e-9")
        assert status == 0
        assert out == "8\n"

    def test_env_var_sets_the_base(self, capsys, monkeypatch):
        monkeypatch.setenv("LIKELIC_BASE", "1e-6")
        status, out, _ = invoke(capsys, "scale", "--capacity", "2")
        assert status == 0
        assert out == "17\n"

    def test_flag_beats_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("LIKELIC_BASE", "1e-6")
        status, out, _ = invoke(capsys, "scale", "--capacity", "2", "--base", "1e-9")
        assert status == 0
        assert out == "79\n"

    def test_bad_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("LIKELIC_BASE", "often")
        status, _, err = invoke(capsys, "scale", "--prob", "0.5")
        assert status == 1
        assert "LIKELIC_BASE" in err

    def test_modes_are_mutually_exclusive(self, capsys):
        status, _, err = invoke(
            capsys, "scale", "--prob", "0.5", "--boundaries"
        )
        assert status == 2
        assert "not allowed" in err

    def test_bad_base_is_a_domain_error(self, capsys):
        status, _, _ = invoke(capsys, "scale", "--prob", "0.5", "--base", "0.7")
        assert status == 1


class TestLearnCommand:
    def test_emits_the_learned_context(self, capsys, tmp_path):
        ctx = tmp_path / "wear.ctx"
        ctx.write_text("node boot\nnode excursion\n", encoding="utf-8")
        script = tmp_path / "hike.txt"
        script.write_text(
            "activate boot\nactivate excursion\ncoactivate\n", encoding="utf-8"
        )
        status, out, _ = invoke(
            capsys, "learn", "--context", str(ctx), "--script", str(script)
        )
        assert status == 0
        assert "edge boot -> excursion : 5" in out
        assert "edge excursion -> boot : 5" in out


class TestExportDotCommand:
    def test_plain(self, capsys):
        status, out, _ = invoke(capsys, "export-dot", "--context", SNOWBIRD)
        assert status == 0
        assert out.startswith("digraph {")
        assert out.rstrip().endswith("}")

    def test_with_valuation_file(self, capsys, tmp_path):
        facts = tmp_path / "facts.ctx"
        facts.write_text("fact accident = 1\n", encoding="utf-8")
        status, out, _ = invoke(
            capsys, "export-dot", "--context", SNOWBIRD,
            "--valuation", str(facts),
        )
        assert status == 0
        assert '"accident" [label="accident (1)"];' in out

    def test_valuation_for_unknown_vertex(self, capsys, tmp_path):
        facts = tmp_path / "facts.ctx"
        facts.write_text("fact ghost = 1\n", encoding="utf-8")
        status, _, err = invoke(
            capsys, "export-dot", "--context", SNOWBIRD,
            "--valuation", str(facts),
        )
        assert status == 1
        assert "ghost" in err


class TestDemoDice:
    def test_all_four_wagers_are_neutral(self, capsys):
        status, out, _ = invoke(capsys, "demo-dice")
        assert status == 0
        lines = out.splitlines()
        assert "de Méré A: p=0.5177 → l=3 (neutral)" in lines
        assert "Pepys B: p=0.5973 → l=3 (neutral)" in lines
        assert sum("l=3" in line for line in lines) == 4


class TestHarness:
    @pytest.mark.parametrize("command", sorted(SUBCOMMAND_FLAGS))
    def test_help_exits_zero_and_names_all_flags(self, capsys, command):
        status, out, _ = invoke(capsys, command, "--help")
        assert status == 0
        for flag in SUBCOMMAND_FLAGS[command]:
            assert flag in out

    def test_unknown_flag(self, capsys):
        status, _, err = invoke(capsys, "demo-dice", "--frobnicate")
        assert status == 2
        assert "usage" in err

    def test_unknown_subcommand(self, capsys):
        status, _, _ = invoke(capsys, "frobnicate")
        assert status == 2

    def test_context_syntax_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.ctx"
        bad.write_text("edge a -> b : 9\n", encoding="utf-8")
        status, _, err = invoke(
            capsys, "infer", "--context", str(bad), "--from", "a", "--to", "b"
        )
        assert status == 2
        assert "line 1" in err

    def test_missing_file(self, capsys, tmp_path):
        status, _, _ = invoke(
            capsys, "infer", "--context", str(tmp_path / "nope.ctx"),
            "--from", "a", "--to", "b",
        )
        assert status == 1

    def test_identical_invocations_are_byte_identical(self, capsys):
        first = invoke(
            capsys, "allpairs", "--context", SNOWBIRD, "--format", "json"
        )
        second = invoke(
            capsys, "allpairs", "--context", SNOWBIRD, "--format", "json"
        )
        assert first == second
