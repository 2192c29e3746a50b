"""
Tests for the command-line interface.
"""
import json

import pytest

from src.cli.exit_codes import ExitCodes
from src.cli.main import cli, load_config
from src.errors import (
    AbelianGroupError,
    BudgetExceededError,
    DimensionMismatchError,
    ScalarSyntaxError,
    UnresolvedClosureError,
)

ABELIAN = {
    "dimension": 1,
    "generators": [{"ratio": "2", "center": ["1"]}, {"ratio": "3", "center": ["1"]}],
}

UNRESOLVED = {
    "dimension": 2,
    "field": {"radicands": [2]},
    "generators": [
        {"ratio": "-1", "translation": ["0", "0"]},
        {"ratio": "1", "translation": ["1", "0"]},
        {"ratio": "1", "translation": ["sqrt2", "0"]},
        {"ratio": "1", "translation": ["0", "1"]},
    ],
}


@pytest.fixture
def invoke(runner, config_path):
    def run(*args):
        return runner.invoke(cli, ["--config", config_path, *args])
    return run


@pytest.fixture
def spec_file(tmp_path):
    def write(data, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return write


class TestExitCodes:
    def test_mapping(self):
        assert ExitCodes.for_error(AbelianGroupError("x")) == 2
        assert ExitCodes.for_error(UnresolvedClosureError("x")) == 3
        assert ExitCodes.for_error(BudgetExceededError("x")) == 4
        assert ExitCodes.for_error(ScalarSyntaxError("x")) == 64
        assert ExitCodes.for_error(DimensionMismatchError("x")) == 65
        assert ExitCodes.for_error(ValueError("x")) == 65


class TestClassify:
    def test_example(self, invoke):
        result = invoke("classify", "--example", "irrational-translations")
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["case"] == "two"
        assert report["H"]["variant"] == "DenseLine"
        assert report["predicates"]["has_non_homeomorphic_orbits"] is True

    def test_case_one(self, invoke):
        result = invoke("classify", "-e", "homothety-translations")
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["case"] == "one"
        assert report["E"]["dimension"] == 2
        assert report["predicates"]["has_dense_orbit"] is True

    def test_abelian_file(self, invoke, spec_file):
        result = invoke("classify", spec_file(ABELIAN))
        assert result.exit_code == ExitCodes.ABELIAN

    def test_unresolved(self, invoke, spec_file):
        path = spec_file(UNRESOLVED)
        result = invoke("classify", path)
        assert result.exit_code == ExitCodes.UNRESOLVED
        assert json.loads(result.stdout)["warnings"]
        strict = invoke("classify", path, "--strict")
        assert strict.exit_code == ExitCodes.UNRESOLVED
        assert strict.stdout == ""

    def test_parse_errors(self, invoke, spec_file, tmp_path):
        bad_literal = {"dimension": 1, "generators": [{"ratio": "2x", "translation": ["0"]}]}
        assert invoke("classify", spec_file(bad_literal)).exit_code == ExitCodes.PARSE_ERROR
        assert invoke("classify", str(tmp_path / "missing.json")).exit_code == ExitCodes.PARSE_ERROR
        assert invoke("classify").exit_code == ExitCodes.PARSE_ERROR
        both = invoke("classify", spec_file(ABELIAN), "-e", "three-centers")
        assert both.exit_code == ExitCodes.PARSE_ERROR

    def test_unknown_example(self, invoke):
        assert invoke("classify", "-e", "nope").exit_code == ExitCodes.SEMANTIC_ERROR


class TestMemberAndClosure:
    def test_member(self, invoke):
        yes = invoke("member", "-e", "irrational-translations", "-p", "0,0", "-q", "sqrt2,0")
        assert yes.exit_code == 0
        assert yes.stdout.strip() == "true"
        no = invoke("member", "-e", "irrational-translations", "-p", "0,0", "-q", "0,1")
        assert no.exit_code == ExitCodes.FALSE
        assert no.stdout.strip() == "false"

    def test_closure_with_comparison(self, invoke):
        result = invoke("closure", "-e", "irrational-translations", "-p", "0,0", "-c", "0,1")
        assert result.exit_code == 0
        output = json.loads(result.stdout)
        assert output["kind"] == "CosetPair"
        assert output["components"] == "1"
        assert output["compare"]["components_y"] == "2"
        assert output["compare"]["homeomorphy"] == "not homeomorphic"

    def test_scaled_family(self, invoke):
        result = invoke("closure", "-e", "homothety-partial-translations", "-p", "3,0")
        output = json.loads(result.stdout)
        assert output["kind"] == "ScaledFamily"
        assert output["lambda"]["variant"] == "CyclicPos"
        assert output["components"] == "countably-many"

    def test_point_errors(self, invoke):
        wrong_length = invoke("closure", "-e", "three-centers", "-p", "0")
        assert wrong_length.exit_code == ExitCodes.SEMANTIC_ERROR
        bad_literal = invoke("member", "-e", "three-centers", "-p", "0,0", "-q", "0,sqrt5")
        assert bad_literal.exit_code == ExitCodes.PARSE_ERROR


class TestOracle:
    def test_centers(self, invoke):
        result = invoke("oracle", "-e", "three-centers", "-L", "1")
        assert result.exit_code == 0
        assert len(json.loads(result.stdout)["gamma_centers"]) == 3

    def test_budget(self, invoke):
        assert invoke("oracle", "-e", "three-centers", "-L", "13").exit_code == ExitCodes.BUDGET
        limited = invoke("oracle", "-e", "three-centers", "-L", "4", "--max-elements", "10")
        assert limited.exit_code == ExitCodes.BUDGET


class TestSimulate:
    def test_stdout_is_reproducible(self, invoke):
        args = ("simulate", "-e", "three-centers", "-n", "1000", "--seed", "5")
        first, second = invoke(*args), invoke(*args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout
        lines = first.stdout.splitlines()
        assert lines[0] == "x1,x2"
        assert 1 < len(lines) <= 1001

    def test_output_file(self, invoke, tmp_path):
        out = tmp_path / "samples" / "orbit.csv"
        result = invoke("simulate", "-e", "line-two-centers", "-p", "1/3", "-n", "500",
                        "-W", "100", "-o", str(out))
        assert result.exit_code == 0
        assert result.stdout == ""
        assert out.read_text(encoding="utf-8").splitlines()[0] == "x1"


class TestVerify:
    def test_pass_and_fail(self, invoke):
        args = ("verify", "-e", "irrational-translations", "-n", "20000", "--seed", "2")
        passed = invoke(*args, "--threshold", "0")
        assert passed.exit_code == 0
        report = json.loads(passed.stdout)
        assert report["max_deviation"] <= 1e-9
        assert report["passed"] is True
        failed = invoke(*args, "--threshold", "1.01")
        assert failed.exit_code == ExitCodes.FALSE


class TestHlambda:
    def test_answers(self, invoke):
        dense = invoke("hlambda", "--ratio", "2", "--p-min", "-16", "--p-max", "-1",
                       "--low", "-5", "--high", "5", "--eps", "0.01")
        assert dense.exit_code == 0
        assert dense.stdout.strip() == "true"
        sparse = invoke("hlambda", "--ratio", "2", "--p-min", "-1", "--p-max", "-1",
                        "--q-bound", "1", "--low", "0", "--high", "5", "--eps", "0.01")
        assert sparse.exit_code == ExitCodes.FALSE

    def test_invalid_ratio(self, invoke):
        result = invoke("hlambda", "--ratio", "1", "--p-min", "-1", "--p-max", "-1",
                        "--low", "0", "--high", "1", "--eps", "0.1")
        assert result.exit_code == ExitCodes.SEMANTIC_ERROR


class TestExamples:
    def test_listing(self, invoke):
        result = invoke("examples")
        assert result.exit_code == 0
        names = [line.split("\t")[0] for line in result.stdout.splitlines()]
        assert "three-centers" in names
        assert "irrational-translations" in names

    def test_export_then_classify(self, invoke, tmp_path):
        path = tmp_path / "specs" / "line.json"
        exported = invoke("export-spec", "line-reflections", "-o", str(path))
        assert exported.exit_code == 0
        result = invoke("classify", str(path))
        assert result.exit_code == 0
        assert json.loads(result.stdout)["H"]["variant"] == "Lattice"

    def test_export_to_stdout(self, invoke):
        result = invoke("export-spec", "product-translation")
        assert json.loads(result.stdout)["dimension"] == 1


class TestConfig:
    def test_missing_config_uses_defaults(self, runner):
        result = runner.invoke(cli, ["--config", "does-not-exist.yaml", "examples"])
        assert result.exit_code == 0

    def test_yaml_overrides_defaults(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("simulator:\n  window: 5.0\n", encoding="utf-8")
        config = load_config(str(path))
        assert config["simulator"]["window"] == 5.0
        assert config["simulator"]["num_words"] == 200_000
        assert config["oracle"]["max_word_length"] == 12
