"""Command line behavior: outputs, exit codes, and error JSON."""

import json

import pytest

from blockginv.cli import main
from blockginv.matrices import Matrix
from blockginv.scalars import parse_scalar
from conftest import mat


def write_matrix(path, rows):
    path.write_text(json.dumps({"rows": rows}))
    return str(path)


@pytest.fixture
def worked_files(tmp_path):
    e = write_matrix(tmp_path / "E.json", [["1", "2"], ["0", "-1"]])
    f = write_matrix(tmp_path / "F.json", [["i", "i"], ["0", "0"]])
    return e, f


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDrazinCommand:
    def test_output(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [["1/2", "0"], ["0", "0"]])
        code, out, err = run_cli(capsys, ["drazin", path])
        assert code == 0
        payload = json.loads(out)
        assert payload == {
            "drazin": [["2", "0"], ["0", "0"]],
            "index": 1,
            "pi": [["0", "0"], ["0", "1"]],
        }

    def test_integer_entries_accepted(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [[1, 0], [0, 2]])
        code, out, _ = run_cli(capsys, ["drazin", path])
        assert code == 0
        assert json.loads(out)["index"] == 0

    def test_non_square_exits_one(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [["1", "2"]])
        code, out, err = run_cli(capsys, ["drazin", path])
        assert code == 1
        assert json.loads(err)["error"] == "ShapeMismatch"


class TestGroupinvCommand:
    def test_success(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [["1/2", "0"], ["0", "0"]])
        code, out, _ = run_cli(capsys, ["groupinv", path])
        assert code == 0
        assert json.loads(out) == {"group_inverse": [["2", "0"], ["0", "0"]]}

    def test_refusal_exits_two(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [["0", "1"], ["0", "0"]])
        code, out, err = run_cli(capsys, ["groupinv", path])
        assert code == 2
        assert json.loads(err)["error"] == "NotGroupInvertible"
        assert out == ""


class TestBlockCommand:
    def test_worked_example(self, worked_files, capsys):
        e, f = worked_files
        code, out, _ = run_cli(capsys, [
            "block", "--theorem", "thm3.1", "--E", e, "--F", f,
        ])
        assert code == 0
        payload = json.loads(out)
        assert payload["theorem"] == "thm3.1"
        assert payload["shape"] == "EF_F0"
        assert payload["gamma"] == [["0", "1"], ["0", "-1"]]
        assert payload["lambda"] == [["-i", "-i"], ["0", "0"]]
        assert payload["assembled"][0] == ["0", "1", "-i", "-i"]
        names = [c["name"] for c in payload["conditions"]]
        assert names == ["FEF^pi=0", "F group-invertible", "EE^pi F^pi=0"]
        assert all(c["holds"] for c in payload["conditions"])

    def test_output_round_trips(self, worked_files, tmp_path, capsys):
        # groupinv applied to the block formula's output must undo it:
        # the group inverse of M^# is M itself.
        e, f = worked_files
        code, out, _ = run_cli(capsys, [
            "block", "--theorem", "thm3.1", "--E", e, "--F", f,
        ])
        assert code == 0
        rows = json.loads(out)["assembled"]
        reparsed = Matrix.from_rows([[parse_scalar(x) for x in row]
                                     for row in rows])
        assert reparsed.shape == (4, 4)
        path = write_matrix(tmp_path / "back.json", rows)
        code, out, _ = run_cli(capsys, ["groupinv", path])
        assert code == 0
        original = [
            ["1", "2", "i", "i"],
            ["0", "-1", "0", "0"],
            ["i", "i", "0", "0"],
            ["0", "0", "0", "0"],
        ]
        assert json.loads(out)["group_inverse"] == original

    def test_explicit_matching_shape(self, worked_files, capsys):
        e, f = worked_files
        code, _, _ = run_cli(capsys, [
            "block", "--theorem", "thm3.1", "--E", e, "--F", f,
            "--shape", "EF_F0",
        ])
        assert code == 0

    def test_shape_contradiction_is_usage_error(self, worked_files, capsys):
        e, f = worked_files
        code, out, err = run_cli(capsys, [
            "block", "--theorem", "thm3.1", "--E", e, "--F", f,
            "--shape", "EI_F0",
        ])
        assert code == 1
        assert json.loads(err)["error"] == "Usage"

    def test_hypothesis_violation_exits_two(self, tmp_path, capsys):
        e = write_matrix(tmp_path / "e.json", [["0", "1"], ["0", "0"]])
        f = write_matrix(tmp_path / "f.json", [["1", "0"], ["0", "0"]])
        code, _, err = run_cli(capsys, [
            "block", "--theorem", "thm2.1", "--E", e, "--F", f,
        ])
        assert code == 2
        assert json.loads(err)["error"] == "HypothesisViolated"

    def test_nonexistence_exits_two(self, tmp_path, capsys):
        e = write_matrix(tmp_path / "e.json", [["0"]])
        f = write_matrix(tmp_path / "f.json", [["0"]])
        code, _, err = run_cli(capsys, [
            "block", "--theorem", "thm2.1", "--E", e, "--F", f,
        ])
        assert code == 2
        assert json.loads(err)["error"] == "NotGroupInvertible"


class TestCheckCommand:
    def test_reports_without_failing(self, tmp_path, capsys):
        e = write_matrix(tmp_path / "e.json", [["0", "1"], ["0", "0"]])
        f = write_matrix(tmp_path / "f.json", [["1/2", "0"], ["0", "0"]])
        code, out, _ = run_cli(capsys, [
            "check", "--theorem", "thm2.1", "--E", e, "--F", f,
        ])
        assert code == 0
        payload = json.loads(out)
        assert payload["satisfied"] is False
        failing = [c for c in payload["conditions"] if not c["holds"]]
        assert failing

    def test_reports_lambda(self, tmp_path, capsys):
        e = write_matrix(tmp_path / "e.json", [["0", "1"], ["0", "0"]])
        f = write_matrix(tmp_path / "f.json", [["2", "0"], ["0", "3"]])
        code, out, _ = run_cli(capsys, [
            "check", "--theorem", "cor2.5", "--E", e, "--F", f,
        ])
        assert code == 0
        law = next(c for c in json.loads(out)["conditions"]
                   if c["name"] == "EF=lambda FE")
        assert law["holds"] is True
        assert law["lambda"] == "3/2"


class TestVerifyCommand:
    def test_positive_run(self, capsys):
        code, out, _ = run_cli(capsys, [
            "verify", "--theorem", "cor2.2", "--trials", "5",
            "--max-n", "4", "--seed", "6",
        ])
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert len(lines) == 6
        assert all(line["verdict"] == "AgreeExists" for line in lines[:-1])
        summary = lines[-1]
        assert summary["summary"] is True
        assert summary["agree_exists"] == 5
        assert summary["mismatch"] == 0

    def test_negative_run(self, capsys):
        code, out, _ = run_cli(capsys, [
            "verify", "--theorem", "cor3.2", "--trials", "4",
            "--max-n", "5", "--seed", "2", "--negative",
        ])
        assert code == 0
        summary = json.loads(out.strip().splitlines()[-1])
        assert summary["agree_not_exists"] == 4

    def test_jobs_do_not_change_output(self, capsys):
        args = ["verify", "--theorem", "thm2.1", "--trials", "4",
                "--max-n", "4", "--seed", "5"]
        code1, out1, _ = run_cli(capsys, args)
        code2, out2, _ = run_cli(capsys, args + ["--jobs", "2"])
        assert code1 == code2 == 0
        assert out1 == out2

    def test_impossible_negatives_exit_one(self, capsys):
        code, _, err = run_cli(capsys, [
            "verify", "--theorem", "cor3.3", "--trials", "2", "--negative",
        ])
        assert code == 1
        assert json.loads(err)["error"] == "GenerationExhausted"

    def test_bad_trials_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, [
            "verify", "--theorem", "thm2.1", "--trials", "0",
        ])
        assert code == 1
        assert json.loads(err)["error"] == "Usage"


class TestExampleCommand:
    def test_passes(self, capsys):
        code, out, _ = run_cli(capsys, ["example-3.5"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "PASS"
        payload = json.loads(lines[0])
        assert payload["match"] is True
        assert payload["computed"] == payload["expected"]


class TestInputErrors:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, ["drazin", "/nonexistent/m.json"])
        assert code == 1
        assert json.loads(err)["error"] == "InputError"

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text("{nope")
        code, _, err = run_cli(capsys, ["drazin", str(path)])
        assert code == 1
        assert json.loads(err)["error"] == "InputError"

    def test_missing_rows_key(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"matrix": [["1"]]}))
        code, _, err = run_cli(capsys, ["drazin", str(path)])
        assert code == 1
        assert "rows" in json.loads(err)["message"]

    def test_ragged_rows(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [["1", "2"], ["3"]])
        code, _, err = run_cli(capsys, ["drazin", path])
        assert code == 1
        assert json.loads(err)["error"] == "InputError"

    def test_bad_scalar_reports_position(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [["1//2"]])
        code, _, err = run_cli(capsys, ["drazin", path])
        assert code == 1
        message = json.loads(err)["message"]
        assert "(0, 0)" in message
        assert "offset 2" in message

    @pytest.mark.parametrize("entry", [1.5, True, None, ["1"]])
    def test_non_scalar_entries_rejected(self, entry, tmp_path, capsys):
        path = write_matrix(tmp_path / "m.json", [[entry]])
        code, _, err = run_cli(capsys, ["drazin", path])
        assert code == 1
        assert json.loads(err)["error"] == "InputError"


class TestUsage:
    def test_no_arguments(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 1
        err = capsys.readouterr().err
        assert json.loads(err)["error"] == "Usage"

    def test_unknown_theorem(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["verify", "--theorem", "thm9.9"])
        assert info.value.code == 1
        assert json.loads(capsys.readouterr().err)["error"] == "Usage"
