import json

import pytest

from csst.cli import main
from csst.fixtures import six_qubit_code
from csst.pauli import format_stabilizer


@pytest.fixture
def files(tmp_path):
    p = tmp_path / "s622.stab"
    p.write_text(format_stabilizer(six_qubit_code(), "example"))
    q = tmp_path / "s622plus.stab"
    q.write_text(format_stabilizer(six_qubit_code(plus_signs=True), "plus"))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_pass_and_fail(capsys, files):
    code, out, _ = run(capsys, "check", "--stabilizer", str(files / "s622.stab"))
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "check", "--stabilizer", str(files / "s622plus.stab"), "--mode", "necessary")
    assert code == 1 and "sign" in out


def test_check_json(capsys, files):
    code, out, _ = run(capsys, "--json", "check", "--stabilizer", str(files / "s622.stab"))
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "check", "--stabilizer", str(files / "s622.stab"), "--json")
    assert json.loads(out)["k"] == 2


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--stabilizer", str(tmp_path / "nope"))
    assert code == 2 and err


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.stab"
    p.write_text("n=2\n+XQ\n")
    code, _, _ = run(capsys, "check", "--stabilizer", str(p))
    assert code == 2


def test_construct_and_logical(capsys, tmp_path):
    c1, c2 = tmp_path / "c1.code", tmp_path / "c2.code"
    assert run(capsys, "construct", "dmc", "--m", "4", "--monomials", "1,x1,x2,x3,x4,x1x2", "-o", str(c1))[0] == 0
    assert run(capsys, "construct", "dmc", "--m", "4", "--monomials", "1,x1,x2", "-o", str(c2))[0] == 0
    code, out, _ = run(capsys, "check-pair", "--c1", str(c1), "--c2", str(c2))
    assert code == 0 and "[[16,3]]" in out
    # frame x3 + x4 in the evaluation-point order
    frame = "".join(str(((p >> 1) & 1) ^ (p & 1)) for p in range(16))
    code, out, _ = run(capsys, "logical", "--c1", str(c1), "--c2", str(c2), "--offset", frame)
    assert code == 0 and "q(v) = v[x3] v[x4] v[x1x2]" in out


def test_construct_rm_and_dense(capsys, tmp_path):
    c1, c2 = tmp_path / "rm13.code", tmp_path / "rm03.code"
    run(capsys, "construct", "rm", "1", "3", "-o", str(c1))
    run(capsys, "construct", "rm", "0", "3", "-o", str(c2))
    code, out, _ = run(capsys, "verify-dense", "--c1", str(c1), "--c2", str(c2))
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "--json", "logical", "--c1", str(c1), "--c2", str(c2), "--method", "dense")
    assert code == 0 and json.loads(out)["preserved"]


def test_construct_bad_range(capsys):
    assert run(capsys, "construct", "rm", "5", "3")[0] == 2


def test_cssify(capsys, tmp_path):
    p = tmp_path / "y.stab"
    p.write_text("n=6\n-ZZIIII\n-IIZZII\n-IIIIZZ\n+YYYYYY\n")
    out_path = tmp_path / "out.stab"
    code, out, _ = run(capsys, "cssify", "--stabilizer", str(p), "-o", str(out_path))
    assert code == 0 and "+XXXXXX" in out_path.read_text()


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--n", "8", "--mode", "monomial")
    assert code == 0 and "[[8,3,2]]" in out
    dest = tmp_path / "r.json"
    run(capsys, "--seed", "5", "search", "--n", "8", "--source", "random", "--max-candidates", "50", "-o", str(dest))
    first = dest.read_text()
    run(capsys, "--seed", "5", "search", "--n", "8", "--source", "random", "--max-candidates", "50", "-o", str(dest))
    assert dest.read_text() == first and json.loads(first)["spec"]["seed"] == 5


def test_search_bad_n(capsys):
    assert run(capsys, "search", "--n", "12")[0] == 2


def test_conjugate(capsys):
    code, out, _ = run(capsys, "conjugate", "XXXXXX")
    assert code == 0 and out.startswith("2^-3 * [ +XXXXXX")
    assert run(capsys, "conjugate", "iX")[0] == 2
