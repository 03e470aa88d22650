# tests/test_cli.py
import json

import pytest
from click.testing import CliRunner

from gauge_tools import pipeline
from gauge_tools.codec import load_gauge
from gauge_tools.constructions import structure_gauge
from gauge_tools.witt import WittRing
from main import cli
from steenrod_tools.algebra import sq
from steenrod_tools.serialization import element_from_json


@pytest.fixture
def runner():
    return CliRunner()


class TestSteenrodCommands:
    def test_adem_kills_sq2_sq2(self, runner):
        result = runner.invoke(cli, ["adem", "--p", "2", "--base", "k", "--format", "text", "Sq2 Sq2"])
        assert result.exit_code == 0, result.output
        assert result.output.strip() == "0"

    def test_adem_json_reparses(self, runner):
        result = runner.invoke(cli, ["adem", "--p", "2", "--base", "k", "Sq1 Sq2"])
        assert result.exit_code == 0, result.output
        assert element_from_json(result.output) == sq(3)

    def test_adem_from_stdin(self, runner):
        result = runner.invoke(cli, ["adem", "--format", "text", "-"], input="Sq1 Sq1\n")
        assert result.exit_code == 0, result.output
        assert result.output.strip() == "0"

    def test_adem_from_file(self, runner, tmp_path):
        source = tmp_path / "word.txt"
        source.write_text("Sq1 Sq2", encoding="utf-8")
        target = tmp_path / "out.json"
        result = runner.invoke(cli, ["adem", "--input", str(source), "--out", str(target)])
        assert result.exit_code == 0, result.output
        assert element_from_json(target.read_text(encoding="utf-8")) == sq(3)

    def test_basis(self, runner):
        result = runner.invoke(cli, ["basis", "--p", "2", "--deg-max", "3"])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert len(payload) == 5
        assert {entry["text"] for entry in payload} == {"1", "Sq1", "Sq2", "Sq3", "Sq2 Sq1"}

    def test_bad_word_is_input_error(self, runner):
        result = runner.invoke(cli, ["adem", "--p", "2", "Sq2 Qx"])
        assert result.exit_code == 2

    def test_sq_needs_p_2(self, runner):
        result = runner.invoke(cli, ["adem", "--p", "3", "Sq2"])
        assert result.exit_code == 2

    def test_unknown_command(self, runner):
        result = runner.invoke(cli, ["cobar"])
        assert result.exit_code == 2

    def test_output_is_deterministic(self, runner):
        args = ["coproduct", "--p", "2", "--base", "O", "Sq4 Sq2"]
        first, second = runner.invoke(cli, args), runner.invoke(cli, args)
        assert first.exit_code == 0, first.output
        assert first.output == second.output


class TestActionCommands:
    def test_convert(self, runner):
        result = runner.invoke(cli, ["convert", "--i", "3", "--b", "1", "--base", "k", "--format", "text"])
        assert result.exit_code == 0, result.output
        assert result.output.strip() == "Ps^3 = 0*Pe^3"

    def test_model_feeds_wu(self, runner):
        exported = runner.invoke(cli, ["model", "P2"])
        assert exported.exit_code == 0, exported.output
        result = runner.invoke(cli, ["wu", "-"], input=exported.output)
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["passed"] is True

    def test_unknown_model(self, runner):
        result = runner.invoke(cli, ["model", "K3"])
        assert result.exit_code == 2


class TestVerifyCommands:
    def test_wu_on_p2(self, runner):
        result = runner.invoke(cli, ["verify", "wu", "--model", "P2", "--format", "text"])
        assert result.exit_code == 0, result.output
        assert "Sq(v) = w" in result.output

    def test_wu_report_json(self, runner):
        result = runner.invoke(cli, ["verify", "wu", "--model", "P2"])
        report = json.loads(result.output)
        assert report["passed"] is True
        assert report["details"]["Sq(v)"] == report["details"]["w"]

    def test_gauge_axioms(self, runner):
        result = runner.invoke(cli, ["verify", "gauge", "H"])
        assert result.exit_code == 0, result.output


class TestGaugeCommands:
    def test_render_structure_gauge(self, runner):
        result = runner.invoke(cli, ["fgauge", "render", "O", "--margin", "1", "--format", "text"])
        assert result.exit_code == 0, result.output
        assert result.output.rstrip("\n") == "\n".join([
            "O",
            "weight |  -1 |   0 |   1",
            "piece  |   W |   W |   W",
            "index  |   0 |   0 |   1",
            "u ->   |   p |   ~ |   ~",
            "<- t   |   ~ |   ~ | inc",
        ])

    def test_sections(self, runner):
        result = runner.invoke(cli, ["fgauge", "sections", "O", "--f", "1"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output) == {"name": "O", "h0": 1, "h1": 1}

    def test_sections_default_residue_field(self, runner):
        result = runner.invoke(cli, ["fgauge", "sections", "O"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output) == {"name": "O", "h0": 1, "h1": 1}

        text = runner.invoke(cli, ["fgauge", "sections", "O", "--format", "text"])
        assert text.output.strip() == "O: h0=1, h1=1"

    def test_sections_need_prime_field(self, runner):
        result = runner.invoke(cli, ["fgauge", "sections", "O", "--f", "2"])
        assert result.exit_code == 2

    def test_algebra_output_reloads(self, runner):
        result = runner.invoke(cli, ["fgauge", "algebra", "twist", "O", "--n", "1"])
        assert result.exit_code == 0, result.output
        assert load_gauge(result.output).same_as(structure_gauge(WittRing(2, 2, 3)).twist(1))

    def test_algebra_arity(self, runner):
        result = runner.invoke(cli, ["fgauge", "algebra", "tensor", "O"])
        assert result.exit_code == 2

    def test_pipeline(self, runner):
        result = runner.invoke(cli, ["fgauge", "pipeline", "--p", "2", "--m", "3"])
        assert result.exit_code == 0, result.output
        summary = json.loads(result.output)
        assert summary["shortcut"] is True
        assert summary["stages"][-1]["name"] == "δ{-1}"

    def test_pipeline_failure_exit_code(self, runner, monkeypatch):
        monkeypatch.setitem(pipeline.M_TILDE_DIMENSIONS, 1, 4)
        result = runner.invoke(cli, ["fgauge", "pipeline"])
        assert result.exit_code == 1
