import json

import pytest

from ellfun import cli
from ellfun.moduli import Undecided


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_legendre(capsys):
    code, out, _ = run(capsys, "--json", "analyze", "y^2 = x*(x-1)*(x-T)", "--field", "Q")
    assert code == 0
    data = json.loads(out)
    assert [b["generator"] for b in data["bad_places"]] == ["T - 1", "T", "inf"]
    assert data["geometric_bad_count"] == 3
    assert data["constant"] is False


def test_analyze_reduce_text(capsys):
    code, out, _ = run(capsys, "analyze", "[1,0,0,0,T]", "--field", "GF(2)", "--reduce")
    assert code == 0
    assert "reduced form      Char2JNonzero" in out


def test_json_flag_after_subcommand(capsys):
    code, out, _ = run(capsys, "constancy", "y^2 = x^3 + T^4*x", "--field", "GF(5)", "--json")
    assert code == 0
    assert json.loads(out)["kind"] == "Constant"


def test_minimize(capsys):
    code, out, _ = run(capsys, "--json", "minimize", "y^2 = x^3 + T^4*x + T^6", "--field", "GF(7)")
    assert code == 0
    assert json.loads(out)["model"] == "y^2 = x^3 + x + 1"


def test_mason(capsys):
    code, out, _ = run(capsys, "--json", "mason", "T^2", "-1", "--field", "GF(5)")
    assert code == 0
    assert json.loads(out)["slack"] == 0


def test_mason_violation_exit_code(capsys, monkeypatch):
    from ellfun.height_mason import MasonViolation

    def boom(t):
        raise MasonViolation("forced")

    monkeypatch.setattr(cli, "mason_check", boom)
    code, out, _ = run(capsys, "mason", "T", "1", "--field", "GF(5)")
    assert code == 2 and "violation" in out


def test_undecided_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "is_constant", lambda W, b: Undecided("forced"))
    code, _, _ = run(capsys, "constancy", "y^2 = x^3 + T", "--field", "GF(5)")
    assert code == 3


def test_roots(capsys):
    code, out, _ = run(capsys, "--json", "oracle", "roots", "--p", "2", "--r", "1", "--m", "1", "--n", "1",
                       "--c", "1", "--bound", "3", "--q1", "T", "--q", "0")
    assert code == 0
    assert json.loads(out)["root"] is None


def test_roots_side_condition(capsys):
    code, _, err = run(capsys, "oracle", "roots", "--p", "2", "--r", "1", "--m", "2", "--n", "1",
                       "--c", "1", "--bound", "2", "--q1", "T", "--q", "0")
    assert code == 1 and "error" in err


def test_unit_pairs(capsys):
    code, out, _ = run(capsys, "--json", "oracle", "unit-pairs", "--field", "GF(5)", "--bound", "2", "--shift", "1")
    assert code == 0
    data = json.loads(out)
    assert data["pairs"] == sum(data["families"].values())


def test_search(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "--json", "search", "--field", "GF(2)", "--form", "char2jnonzero", "--deg", "1",
                       "--output", str(path), "--check-structure")
    assert code == 0
    data = json.loads(out)
    assert data["curves_scanned"] == 12 and data["exit_code"] == 0
    assert len(path.read_text().splitlines()) == 12


def test_search_bad_form(capsys):
    code, _, _ = run(capsys, "search", "--field", "GF(3)", "--form", "short", "--deg", "1")
    assert code == 1


def test_examples(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    assert out.count("[ok]") == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "y^2 = x^3", "--field", "Q"],
        ["analyze", "y^2 = x^3 +", "--field", "Q"],
        ["analyze", "y^2 = x^3 + 1", "--field", "GF(6)"],
    ],
)
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err


def test_minimize_at_infinity(capsys):
    code, out, _ = run(capsys, "minimize", "y^2 = x^3 + 1", "--field", "Q", "--chart", "inf")
    assert code == 0 and "(inf chart)" in out
