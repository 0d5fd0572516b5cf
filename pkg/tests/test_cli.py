import json

import pandas as pd
import pytest

from main import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main, output_path, parse_orders, read_tuples, twist_parameter
from src.errors import ParseError, PreconditionError


def run_json(capsys, *argv):
    code = main(["--format", "json", *argv])
    return code, json.loads(capsys.readouterr().out)


class TestArguments:
    def test_twist_parameter(self):
        assert twist_parameter("J(2,4)") == 2
        assert twist_parameter("figure-eight") == -1
        assert twist_parameter("unknot", allow_unknot=True) == 0
        with pytest.raises(PreconditionError):
            twist_parameter("J(2,0)")

    def test_parse_orders(self):
        assert parse_orders("2,3,5") == [2, 3, 5]
        for bad in ("2,3", "2,x,5", "1,3,5"):
            with pytest.raises(ParseError):
                parse_orders(bad)

    def test_read_tuples(self, tmp_path):
        path = tmp_path / "tuples.txt"
        path.write_text("# Sigma(2,3,5)\n1 1 1\n1,1,3  # second\n\n", encoding="utf-8")
        assert [t.k for t in read_tuples(str(path))] == [(1, 1, 1), (1, 1, 3)]
        path.write_text("1 one 1\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_tuples(str(path))


class TestCommands:
    def test_riley(self, capsys, reference):
        code, payload = run_json(capsys, "riley", "--knot", "J(2,4)", "--at-i", "--check")
        assert code == EXIT_OK
        assert payload["verified"]
        names = [p["name"] for p in payload["polynomials"]]
        assert names == ["riley", "riley at s=i"]
        assert payload["polynomials"][0]["degrees"]["t"] == 3
        assert payload["manifest"]["command"] == "riley"
        assert len(payload["manifest"]["input_hash"]) == 64

    def test_manifest_hash_is_stable(self, capsys):
        _, first = run_json(capsys, "riley", "--knot", "5_2")
        _, second = run_json(capsys, "riley", "--knot", "5_2")
        assert first["manifest"]["input_hash"] == second["manifest"]["input_hash"]

    def test_usage_errors(self, capsys):
        assert main(["riley", "--knot", "J(2,0)"]) == EXIT_USAGE
        assert main(["riley", "--knot", "9_99"]) == EXIT_USAGE
        assert main(["surgery", "--knot", "4_1", "--slope", "two"]) == EXIT_USAGE
        assert main(["--precision", "8", "seifert", "--brieskorn", "2,3,5"]) == EXIT_USAGE
        assert main(["nonsense"]) == EXIT_USAGE

    def test_apoly_unknot(self, capsys):
        code, payload = run_json(capsys, "apoly", "--knot", "unknot")
        assert code == EXIT_OK
        assert payload["polynomials"][0]["polynomial"] == "1"

    def test_seifert_sigma(self, capsys):
        code, payload = run_json(capsys, "seifert", "--brieskorn", "2,3,5", "--emit", "sigma")
        assert code == EXIT_OK
        assert payload["sigma"] == "t^2 - 6*t + 4"

    def test_seifert_certificates_text(self, capsys):
        code = main(["seifert", "--index", "1;0;(2,1),(3,1),(5,1)", "--emit", "certificate"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "x^2 - 6*x + 4" in out

    def test_seifert_csv(self, capsys, tmp_path):
        out = tmp_path / "sigma_235.csv"
        code = main(["--out", str(out), "seifert", "--brieskorn", "2,3,5"])
        capsys.readouterr()
        assert code == EXIT_OK
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["k", "tau", "acyclic"]
        assert len(frame) == 2

    def test_json_artifact(self, capsys, tmp_path):
        out = tmp_path / "riley.json"
        assert main(["--out", str(out), "riley", "--knot", "4_1"]) == EXIT_OK
        capsys.readouterr()
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["subject"] == "J(2,-2)"

    def test_bare_out_name_goes_to_output_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setattr("main.DEFAULT_OUTPUT_DIR", tmp_path)
        assert output_path("riley.json") == tmp_path / "riley.json"
        assert output_path(str(tmp_path / "sub" / "riley.json")) == tmp_path / "sub" / "riley.json"
        assert main(["--out", "riley.json", "riley", "--knot", "4_1"]) == EXIT_OK
        capsys.readouterr()
        data = json.loads((tmp_path / "riley.json").read_text(encoding="utf-8"))
        assert data["subject"] == "J(2,-2)"

    def test_splice_unknot_is_negative(self, capsys):
        assert main(["splice", "--knot", "unknot"]) == EXIT_NEGATIVE

    def test_certify_without_applicable_certificate(self, capsys):
        assert main(["certify", "--knot", "5_2", "--slope", "2/3"]) == EXIT_USAGE

    @pytest.mark.slow
    def test_surgery_table(self, capsys):
        code, payload = run_json(capsys, "surgery", "--knot", "4_1", "--slope", "2/3")
        assert code == EXIT_OK
        assert payload["subject"] == "J(2,-2)" and payload["slope"] == "2/3"
        assert len(payload["rows"]) == 12

    @pytest.mark.slow
    def test_certify_one_third_on_figure_eight(self, capsys):
        code, payload = run_json(capsys, "certify", "--knot", "4_1", "--slope", "1/3")
        assert code == EXIT_OK
        assert {r["name"] for r in payload["reports"]} == {"one-over-q", "integrality-chain"}
