import json

import pytest

from arx.backends import linear_ainfty
from arx.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


def test_cat_build_and_validate(capsys):
    code, data, _ = run_json(capsys, "cat", "build", "linear:3")
    assert code == 0 and data["L"] == 3
    code, data, _ = run_json(capsys, "cat", "validate", "fi:3")
    assert code == 0 and data["ok"]


def test_validate_corrupted_file(capsys, tmp_path):
    data = linear_ainfty(3).to_json()
    data["comp"]["0,1,2"] = [[["2"]]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, out, _ = run_json(capsys, "cat", "validate", str(p))
    assert code == 2 and not out["ok"]
    assert any("associativity" in v for v in out["violations"])


def test_growth(capsys):
    code, data, _ = run_json(capsys, "cat", "growth", "star_ray:8", "--obj", "0")
    assert code == 0
    row = data["growth"][0]
    assert row["dims"] == [1, 1, 2, 3, 4, 5, 6, 7, 8] and row["verdict"] == "GrowingAtHorizon"
    code, data, _ = run_json(capsys, "cat", "growth", "linear:8")
    assert all(r["verdict"] == "Bounded" for r in data["growth"])


def test_quiver_file(capsys, tmp_path):
    p = tmp_path / "q.txt"
    p.write_text("0 -> 1 : a\n1 -> 2 : b\n0 -> 2 : c\n")
    code, data, _ = run_json(capsys, "cat", "build", str(p))
    assert code == 0 and data["L"] == 2


def test_tau_and_tauminus(capsys):
    code, data, _ = run_json(capsys, "mod", "tau", "X:1:1", "--cat", "linear:8")
    assert code == 0 and data["result"]["identified"] == "X:2:2" and data["flag"] is None
    code, data, _ = run_json(capsys, "mod", "tauminus", "X:2:3", "--cat", "linear:8")
    assert code == 0 and data["result"]["identified"] == "X:1:2"
    code, data, _ = run_json(capsys, "mod", "tau", "P:2", "--cat", "linear:8")
    assert data["flag"] == "Projective"


def test_hom_and_ext(capsys):
    code, data, _ = run_json(capsys, "mod", "hom", "X:1:3", "X:0:2", "--cat", "linear:4")
    assert code == 0 and data["dim"] == 1 and len(data["basis"]) == 1
    code, data, _ = run_json(capsys, "mod", "ext", "X:1:1", "X:2:2", "--cat", "linear:4")
    assert data["dim"] == 1 and data["basis"][0]["middle"] == "X:1:2"


def test_ass(capsys):
    code, data, _ = run_json(capsys, "mod", "ass", "X:1:1", "--cat", "linear:8")
    assert code == 0
    assert data["left"]["identified"] == "X:2:2" and data["right"]["identified"] == "X:1:1"
    assert [m["identified"] for m in data["middle"]] == ["X:1:2"]
    assert data["verification"]["non_split"] and not data["verification"]["failures"]


def test_classify(capsys):
    code, data, _ = run_json(capsys, "mod", "classify", "P:1", "--cat", "linear:8")
    assert code == 0 and data["l_member"] == "No" and data["r_member"] is True
    code, data, _ = run_json(capsys, "mod", "classify", "P:1", "--cat", "fi:4")
    assert data["l_member"] == "Yes(InjectiveObject)"
    code, data, _ = run_json(capsys, "mod", "classify", "P:1", "--cat", "star_ray:5")
    assert data["l_member"] == "UnknownRule" and "ext_audit" in data
    code, _, err = run_json(capsys, "mod", "classify", "P:1", "--cat", "star_ray:5", "--strict")
    assert code == 1 and err["error"] == "UnknownBackendRule"


def test_decompose(capsys):
    code, data, _ = run_json(capsys, "mod", "decompose", "P:3", "--cat", "fi:4")
    assert code == 0 and not data["indecomposable"]
    assert sum(s["multiplicity"] for s in data["summands"]) == 4


def test_domain_errors_exit_1(capsys):
    code, _, err = run_json(capsys, "mod", "ass", "P:3", "--cat", "linear:8")
    assert code == 1 and err["error"] == "IsProjective"
    code, _, err = run_json(capsys, "mod", "tauminus", "P:1", "--cat", "linear:8")
    assert code == 1 and err["error"] == "NotFiniteDimensional"


def test_input_errors_exit_2(capsys):
    code, _, err = run_json(capsys, "mod", "tau", "X:5:1", "--cat", "linear:8")
    assert code == 2
    code, _, err = run_json(capsys, "mod", "tau", "X:1:1")
    assert code == 2 and "--cat" in err["message"]
    code, _, _ = run_json(capsys, "cat", "build", "cube:3")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nosuchsuite", "--cat", "linear:3"])
    assert exc.value.code == 2


def test_unsupported_exit_3(capsys):
    code, _, err = run_json(capsys, "cat", "build", "fi:4", "--field", "fp:3")
    assert code == 3 and err["error"] == "CharacteristicUnsupported"
    code, _, err = run_json(capsys, "cat", "build", "vi:4:2")
    assert code == 3


def test_verify(capsys):
    code, data, _ = run_json(capsys, "verify", "yoneda", "--cat", "linear:4")
    assert code == 0 and data["summary"]["hard_failures"] == 0
    code, _, err = run_json(capsys, "verify", "fiinj", "--cat", "linear:4")
    assert code == 1 and err["error"] == "WrongBackend"


def test_workspace(capsys, tmp_path):
    ws = str(tmp_path / "ws.json")
    code, data, _ = run_json(capsys, "mod", "define", "A", "X:1:2", "--cat", "linear:4",
                             "--workspace", ws)
    assert code == 0 and data["dims"] == [0, 1, 1, 0, 0]
    code, data, _ = run_json(capsys, "mod", "tau", "A", "--cat", "linear:4", "--workspace", ws)
    assert data["result"]["identified"] == "X:2:3"
    # a module JSON file works as a source too
    mod_file = tmp_path / "m.json"
    code, data, _ = run_json(capsys, "mod", "define", "B", "S:2", "--cat", "linear:4")
    mod_file.write_text(json.dumps(data["module"]))
    code, data, _ = run_json(capsys, "mod", "tau", str(mod_file), "--cat", "linear:4")
    assert data["result"]["identified"] == "X:3:3"


def test_pretty_and_out(capsys, tmp_path):
    code, out, _ = run(capsys, "mod", "ass", "X:1:1", "--cat", "linear:8", "--pretty")
    assert code == 0 and "X:1:2" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)
    target = tmp_path / "o.json"
    code, out, _ = run(capsys, "cat", "build", "linear:2", "--out", str(target))
    assert out == "" and json.loads(target.read_text())["L"] == 2


def test_dot(capsys):
    code, out, _ = run(capsys, "dot", "arquiver", "--cat", "linear:3")
    assert code == 0 and out.startswith('digraph "AR_linear_3"')
