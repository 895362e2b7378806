import json

from cremonalab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_enumerate_json(capsys):
    code, out = run(capsys, "enumerate", "--r", "3", "--kind", "exc", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 6
    assert data[0] == {"d": 0, "m": [-1, 0, 0]}


def test_enumerate_deterministic(capsys):
    _, out1 = run(capsys, "enumerate", "--r", "5", "--kind", "conic", "--format", "json")
    _, out2 = run(capsys, "enumerate", "--r", "5", "--kind", "conic", "--format", "json")
    assert out1 == out2
    assert len(json.loads(out1)) == 10


def test_weyl_builtin(capsys):
    code, out = run(capsys, "weyl", "--builtin", "geiser", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 2
    assert data["fixed_rank"] == 1
    assert data["cyclotomic_multiplicities"] == {"1": 1, "2": 7}
    assert data["orbit_sizes"] == [2] * 28


def test_weyl_matrix_rejects_non_weyl(capsys):
    bad = json.dumps([[2, 0], [0, 1]])
    code, _ = run(capsys, "weyl", "--matrix", bad)
    assert code == 1


def test_compose(capsys):
    code, out = run(capsys, "compose", "(y*z : x*z : x*y)", "(y*z : x*z : x*y)")
    assert code == 0
    assert out.strip() == "(x : y : z)"


def test_order_cmd(capsys):
    code, out = run(capsys, "order", "(y : z : x)")
    assert code == 0 and out.strip() == "3"
    code, out = run(capsys, "order", "--ambient", "P3",
                    "(zeta(9)*w : x : zeta(3)*y : zeta(3)^2*z)")
    assert code == 0 and out.strip() == "9"


def test_order_parse_error(capsys):
    code, _ = run(capsys, "order", "(y : z : q)")
    assert code == 2


def test_jonq_analysis(capsys):
    code, out = run(capsys, "jonq", "--element", "0, x^4-1, 1, 0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 2
    assert data["involution"] is True
    assert data["delta"]["radical"] == "x^4 - 1"
    assert data["twisting"]["absolute"] is True
    assert data["branch_points"] == 4 and data["genus"] == 1


def test_jonq_with_base(capsys):
    code, out = run(capsys, "jonq", "--element", "1, 0, 0, 1; 0, 1, 1, 0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 2 and data["involution"] is True
    assert "delta" not in data  # base action nontrivial


def test_jonq_bad_input(capsys):
    code, _ = run(capsys, "jonq", "--element", "1, 2, 3")
    assert code == 2


def test_corpus_json_deterministic(capsys):
    code1, out1 = run(capsys, "corpus", "--json")
    code2, out2 = run(capsys, "corpus", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["failed"] == 0
    names = [r["name"] for r in data["results"]]
    assert len(names) == len(set(names)) == data["rows"]


def test_corpus_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text(
        "broken | P2 | gen = (x : y : -z) | gen_orders = 3 | group = 3 | structure = 3\n"
    )
    code, out = run(capsys, "corpus", "--file", str(bad), "--json")
    assert code == 1
    assert json.loads(out)["failed"] == 1


def test_usage_error_exit_code(capsys):
    assert main(["enumerate", "--r", "11"]) == 2
