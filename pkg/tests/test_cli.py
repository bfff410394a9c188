import json

import pytest

from symcomplex.cli import main


@pytest.fixture
def files(tmp_path):
    docs = {
        "fib.json": {"type": "substitution", "morphism": {"a1": ["a2"], "a2": ["a2", "a1"]}},
        "full_a.json": {"type": "full", "alphabet": ["a"]},
        "full2.json": {"type": "full", "alphabet": ["a1", "a2"]},
        "sigma_aa.json": {"a": ["a", "a"]},
        "doubling.json": {"a1": ["a1-", "a1+"], "a2": ["a2-", "a2+"]},
        "phi.json": {"a1": ["a2", "a1"], "a2": ["a2", "a1", "a2"]},
        "psi.json": {"a1": ["a2^-1", "a1", "a1"], "a2": ["a1^-1", "a2"]},
    }
    for name, doc in docs.items():
        (tmp_path / name).write_text(json.dumps(doc))
    (tmp_path / "broken.json").write_text("{not json")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_complexity_fibonacci(files, capsys):
    code, out, _ = run(capsys, "complexity", files / "fib.json", "-n", 4)
    assert code == 0
    assert out == "n,p\n1,2\n2,3\n3,4\n4,5\n"


def test_complexity_json(files, capsys):
    code, out, _ = run(capsys, "complexity", files / "full2.json", "-n", 3, "--format", "json")
    assert json.loads(out)["entries"] == {"1": 2, "2": 4, "3": 8}


def test_image(files, capsys):
    code, out, _ = run(capsys, "image", files / "full2.json", files / "doubling.json", "-n", 4)
    assert code == 0 and out.splitlines()[1:] == ["1,4", "2,6", "3,8", "4,12"]


def test_recognize_counterexample_is_not_an_error(files, capsys):
    code, out, _ = run(capsys, "recognize", files / "sigma_aa.json", files / "full_a.json")
    assert code == 0
    assert json.loads(out)["verdict"] == "counterexample_found"


def test_entropy(files, capsys, tmp_path):
    target = tmp_path / "profile.csv"
    code, out, _ = run(capsys, "entropy", files / "full2.json", "-n", 3, "-o", target)
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == "n,p,log_p_over_n"


def test_counterexample(capsys):
    code, out, _ = run(capsys, "counterexample", "--alphabet-size", 2, "-n", 12)
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert all(p["passed"] for p in doc["parts"][:2])


def test_basis_change(files, capsys):
    code, out, _ = run(capsys, "basis-change", files / "full2.json", files / "phi.json", files / "psi.json", "-n", 5)
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["constants"]["C"] == 25


def test_verify_all_text(capsys):
    code, out, _ = run(capsys, "verify", "all", "-n", 6)
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") > 20


@pytest.mark.parametrize(
    "argv",
    [
        ("complexity", "missing.json"),
        ("complexity", "broken.json"),
        ("basis-change", "full2.json", "phi.json", "phi.json", "-n", "2"),
        ("counterexample", "--alphabet-size", "1"),
    ],
)
def test_malformed_input_exit_2(files, capsys, argv, monkeypatch):
    monkeypatch.chdir(files)
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_window_rejected(files, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["complexity", str(files / "fib.json"), "-n", "0"])
    assert exc.value.code == 2


def test_deterministic_output(files, capsys):
    first = run(capsys, "verify", "all", "-n", 5, "--format", "json")[1]
    second = run(capsys, "verify", "all", "-n", 5, "--format", "json")[1]
    assert first == second
    a = run(capsys, "recognize", files / "sigma_aa.json", files / "full_a.json")[1]
    b = run(capsys, "recognize", files / "sigma_aa.json", files / "full_a.json")[1]
    assert a == b
