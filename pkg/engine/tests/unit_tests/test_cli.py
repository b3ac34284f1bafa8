import json

import pytest

from src.main import cli_app
from src.repository.crud.instance import load_instance
from src.solvers.oracle_gen import GenerationResult


def _invoke(runner, *args):
    return runner.invoke(cli_app, [str(arg) for arg in args])


def test_analyze_json(runner, reference_path) -> None:
    result = _invoke(runner, "analyze", "--instance", reference_path, "--json")
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["command"] == "analyze"
    assert report["geometry"]["d_AB"] == 8.0
    assert report["geometry"]["hausdorff"] == 16.0
    assert report["pairing"]["A0"] == [0, 1]
    assert report["theta_conditions"]["theta3"] is False
    assert len(report["instance_digest"]) == 64
    assert report["assumptions"] == ["alpha_subsequential"]


def test_analyze_text(runner, reference_path) -> None:
    result = _invoke(runner, "analyze", "--instance", reference_path)
    assert result.exit_code == 0
    assert "d(A, B)       8" in result.output


def test_check_scopes(runner, reference_path) -> None:
    assert _invoke(runner, "check", "--instance", reference_path).exit_code == 0
    assert _invoke(runner, "check", "--instance", reference_path, "--scope", "A").exit_code == 2
    assert _invoke(runner, "check", "--instance", reference_path, "--scope", "A", "--k", "0.99").exit_code == 0


def test_check_json_reports_uniqueness(runner, reference_path) -> None:
    result = _invoke(runner, "check", "--instance", reference_path, "--json")
    report = json.loads(result.output)
    assert report["uniqueness"]["contradiction"] is True
    assert report["uniqueness"]["lambda_term"] == 24.0
    assert report["hypotheses"]["P"]["holds"] is False


def test_solve_reference(runner, reference_path, tmp_path) -> None:
    out = tmp_path / "run.json"
    result = _invoke(runner, "solve", "--instance", reference_path, "--json", "--out", out)
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["result"]["point"] == [-2.0, 2.0]
    assert report["result"]["trace"]["outcome"] == "CONVERGED"
    assert report["oracle_match"] is True
    assert json.loads(out.read_text(encoding="utf-8"))["result"]["certified"] is True


def test_solve_exit_codes(runner, halving_path) -> None:
    assert _invoke(runner, "solve", "--instance", halving_path).exit_code == 0
    assert _invoke(runner, "solve", "--instance", halving_path, "--max-iter", 1).exit_code == 3
    fixed = _invoke(runner, "solve", "--instance", halving_path, "--fixed-point", "--x0", 10, "--json")
    assert fixed.exit_code == 0
    assert json.loads(fixed.output)["result"]["point"] == [0.0]


def test_solve_rejects_bad_seeds(runner, tmp_path) -> None:
    path = tmp_path / "bad_seeds.json"
    instance = {
        "metric": {"kind": "L1"},
        "dim": 2,
        "A": [[0.0, 1.0], [1.0, 1.0]],
        "B": [[0.0, 0.0], [1.0, 0.0]],
        "F": {"0": [0], "1": [1]},
        "theta": {"family": "EXP"},
        "params": {"k": 0.5},
        "seeds": {"x0": 0, "x1": 1, "y0": 0},
    }
    path.write_text(json.dumps(instance), encoding="utf-8")
    result = _invoke(runner, "solve", "--instance", path, "--json")
    assert result.exit_code == 2
    assert json.loads(result.output)["error_type"] == "SeedError"


def test_oracle(runner, reference_path) -> None:
    result = _invoke(runner, "oracle", "--instance", reference_path, "--json")
    assert result.exit_code == 0
    assert json.loads(result.output)["bpps"] == [0, 1]


def test_input_errors(runner, tmp_path) -> None:
    assert _invoke(runner, "analyze", "--instance", tmp_path / "absent.json").exit_code == 1
    broken = tmp_path / "broken.json"
    broken.write_text('{"metric": ', encoding="utf-8")
    result = _invoke(runner, "analyze", "--instance", broken, "--json")
    assert result.exit_code == 1
    error = json.loads(result.output)
    assert error["error_type"] == "InstanceParseError"
    assert error["location"].startswith("line 1")
    text = _invoke(runner, "analyze", "--instance", broken)
    assert "InstanceParseError" in text.output


def test_usage_errors_exit_with_two(runner, reference_path) -> None:
    assert _invoke(runner, "check", "--instance", reference_path, "--scope", "B").exit_code == 2


def test_bvp_json_and_csv(runner, tmp_path) -> None:
    csv_path = tmp_path / "x.csv"
    result = _invoke(runner, "bvp", "--f", "constant:2", "--n", 16, "--pairs", 10, "--csv", csv_path, "--json")
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["converged"] is True
    assert abs(report["x"][8] - 0.25) < 1e-12
    assert report["max_residual"] < 1e-8
    assert report["audit"]["holds"] is True
    assert csv_path.read_text(encoding="utf-8").splitlines()[0] == "t,x"


def test_bvp_errors(runner) -> None:
    assert _invoke(runner, "bvp", "--f", "bogus").exit_code == 1
    assert _invoke(runner, "bvp", "--f", "sin", "--n", 9).exit_code == 1
    assert _invoke(runner, "bvp", "--f", "sin:1", "--n", 16, "--max-iter", 2).exit_code == 3


def test_gen_prints_and_writes(runner, tmp_path) -> None:
    printed = _invoke(runner, "gen", "--seed", 3)
    assert printed.exit_code == 0
    assert json.loads(printed.output)["theta"]["family"] == "EXP"
    out = tmp_path / "gen.json"
    written = _invoke(runner, "gen", "--seed", 3, "--out", out)
    assert written.exit_code == 0
    assert out.read_text(encoding="utf-8") == printed.output
    assert load_instance(out).seeds is not None


def test_gen_exhausted(runner, mocker) -> None:
    mocker.patch(
        "src.api.routes.generate.gen_instance",
        return_value=GenerationResult(instance=None, problem=None, attempts=5, exhausted=True),
    )
    assert _invoke(runner, "gen", "--seed", 1).exit_code == 1


@pytest.mark.parametrize(
    ("args", "location"),
    [
        (("--image-size", 0), "[image_size]"),
        (("--dim", 0), "[dim]"),
        (("--k", 1.5), "[k]"),
        (("--n-a", 300, "--n-b", 200), "Lattice [-10, 10]^2 holds 441 points"),
    ],
)
def test_gen_rejects_invalid_profiles(runner, args, location) -> None:
    result = _invoke(runner, "gen", "--seed", 1, *args)
    assert result.exit_code == 1
    assert "InstanceValidationError" in result.output
    assert location in result.output
    assert "Traceback" not in result.output


def test_gen_planted_option(runner) -> None:
    result = _invoke(runner, "gen", "--seed", 2, "--planted", 0, "--n-a", 3, "--n-b", 3)
    assert result.exit_code == 0
    assert len(json.loads(result.output)["A"]) == 3
