import json

import pytest
from click.testing import CliRunner

from orbichar.cli import cli, parse_tau
from orbichar.exceptions import InconsistentSamples


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.3.0" in result.output


def test_parse_tau():
    assert parse_tau("0.3,0.8") == 0.3 + 0.8j
    assert parse_tau("0,1") == 1j


class TestClassify:
    def test_a3_header(self, runner):
        result = runner.invoke(cli, ["classify", "--example", "a3"])
        assert result.exit_code == 0, result.output
        assert result.output.splitlines()[0] == "9 modules (4 Type1, 1 Type2, 4 Type3)"
        assert "V[(0,0,0)]^0" in result.output

    def test_permutation_example(self, runner):
        result = runner.invoke(cli, ["example", "perm", "--p", "3", "--t", "1", "--classify"])
        assert result.exit_code == 0, result.output
        assert result.output.splitlines()[0] == "20 modules (6 Type1, 2 Type2, 12 Type3)"

    def test_json_output(self, runner):
        result = runner.invoke(cli, ["classify", "--example", "d4", "--format", "json"])
        payload = json.loads(result.output)
        assert payload["total"] == 10
        assert payload["counts"] == {"type1": 3, "type2": 1, "type3": 6}
        assert payload["modules"][0]["weight"] == "0"

    def test_verbose_flag(self, runner):
        assert runner.invoke(cli, ["-v", "classify", "--example", "a3"]).exit_code == 0


class TestInputErrors:
    def test_qbar_mismatch(self, runner):
        result = runner.invoke(cli, ["example", "a2"])
        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_spec_and_example_together(self, runner, tmp_path):
        path = tmp_path / "job.json"
        path.write_text('{"gram": [[2]], "isometry": [[-1]]}')
        result = runner.invoke(cli, ["classify", "--spec", str(path), "--example", "a3"])
        assert result.exit_code == 2
        assert "either --spec or --example" in result.output

    @pytest.mark.parametrize("text", ['{"gram": [[2]],', '{"gram": [[3]], "isometry": [[1]]}'])
    def test_bad_spec(self, runner, tmp_path, text):
        path = tmp_path / "job.json"
        path.write_text(text)
        result = runner.invoke(cli, ["classify", "--spec", str(path)])
        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_bad_tau(self, runner):
        result = runner.invoke(cli, ["chars", "--example", "a3", "--tau", "nonsense"])
        assert result.exit_code == 2

    def test_tau_below_real_axis(self, runner):
        result = runner.invoke(cli, ["chars", "--example", "a3", "--tau", "0,-1"])
        assert result.exit_code == 2
        assert "upper half-plane" in result.output

    def test_fusion_of_dependent_characters(self, runner):
        # DegenerateBasis is a computational failure, not an input error
        result = runner.invoke(cli, ["fusion", "--example", "d4"])
        assert result.exit_code == 1
        assert "linearly dependent" in result.output

    def test_transform_errors_exit_one(self, runner, monkeypatch):
        def fail(*args, **kwargs):
            raise InconsistentSamples("sampled roots disagree")

        monkeypatch.setattr("orbichar.cli.v_constants", fail)
        result = runner.invoke(cli, ["constants", "--example", "a3"])
        assert result.exit_code == 1
        assert "Error: sampled roots disagree" in result.output


class TestOutputs:
    def test_qdims_json(self, runner):
        result = runner.invoke(cli, ["qdims", "--example", "d4", "--format", "json"])
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert sorted({round(x, 9) for x in payload["quantum"]}) == [1, 2, 3]
        assert payload["sum_rule"] == pytest.approx(1)

    def test_tmatrix_csv(self, runner):
        result = runner.invoke(cli, ["tmatrix", "--example", "a3", "--format", "csv"])
        assert result.exit_code == 0, result.output
        assert result.output.splitlines()[0].startswith(',"V[(0,0,0)]^0",')
        assert len(result.output.strip().splitlines()) == 10

    def test_constants(self, runner):
        result = runner.invoke(cli, ["constants", "--example", "d4"])
        assert result.exit_code == 0, result.output
        for name in ("beta0", "c0", "v0", "v1", "v2", "|v| expected"):
            assert name in result.output

    def test_constants_p_two(self, runner):
        result = runner.invoke(cli, ["constants", "--example", "a3", "--format", "json"])
        payload = json.loads(result.output)
        assert payload["c_beta0"]["re"] == pytest.approx(4)
        assert abs(payload["c_beta0"]["im"]) < 1e-9

    def test_exact_characters(self, runner):
        result = runner.invoke(cli, ["chars", "--example", "a3", "--exact", "--terms", "2"])
        assert result.exit_code == 0, result.output
        assert "V[(0,0,0)]^0" in result.output
        assert "coefficient" in result.output

    def test_numeric_characters(self, runner):
        result = runner.invoke(cli, ["chars", "--example", "a3", "--tau", "0,1", "--format", "json"])
        payload = json.loads(result.output)
        assert len(payload["labels"]) == 9
        assert len(payload["values"]) == 1

    def test_several_actions(self, runner):
        result = runner.invoke(cli, ["example", "d4", "--qdims", "--tmatrix"])
        assert result.exit_code == 0, result.output
        assert "sum of squared asymptotic dimensions" in result.output

    def test_save_spec_round_trip(self, runner, tmp_path):
        path = tmp_path / "saved.json"
        first = runner.invoke(cli, ["classify", "--example", "a3", "--tau", "0,1", "--terms", "3",
                                    "--save-spec", str(path)])
        assert first.exit_code == 0, first.output
        saved = json.loads(path.read_text())
        assert saved["name"] == "a3"
        assert saved["options"]["n_terms"] == 3
        second = runner.invoke(cli, ["classify", "--spec", str(path)])
        assert second.exit_code == 0, second.output
        assert second.output == first.output


@pytest.mark.slow
def test_verify_a3(runner):
    result = runner.invoke(cli, ["verify", "--example", "a3"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("PASS")
