import json

import pytest

from qnichols.cli import main
from qnichols.quandle import catalog


@pytest.fixture()
def s3pair_spec(tmp_path):
    spec = {
        "group": {"type": "enveloping", "quandle": "(12)^S3"},
        "V": {"class_rep": "x1", "character": {"x1": "-1"}},
        "W": {"class_rep": "x1", "character": {"x1": "-1"}},
    }
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(spec))
    return str(path)


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_quandle_catalog(capsys):
    code, out = run(capsys, "quandle", "--catalog", "(123)^A4")
    assert code == 0
    data = json.loads(out)
    assert data["indecomposable"] is True
    assert data["catalog_match"] == "(123)^A4"
    assert data["is_quandle"] and data["is_crossed_set"]


def test_quandle_file_orbits(capsys, tmp_path):
    path = tmp_path / "t2.qnd"
    path.write_text(catalog("trivial(2)").to_text())
    code, out = run(capsys, "quandle", "--file", str(path))
    assert code == 0
    assert len(json.loads(out)["orbits"]) == 2


def test_quandle_iso(capsys, tmp_path):
    a = tmp_path / "a.qnd"
    b = tmp_path / "b.qnd"
    a.write_text(catalog("Z_2^{2,2}").to_text())
    b.write_text(
        json.dumps({"size": 4, "table": [[1, 2, 4, 3], [1, 2, 4, 3], [2, 1, 3, 4], [2, 1, 3, 4]]})
    )
    code, out = run(capsys, "quandle", "--iso", str(a), str(b))
    assert code == 0
    data = json.loads(out)
    assert data["isomorphic"] is True and len(data["map"]) == 4


def test_quandle_malformed_file_exit2(capsys, tmp_path):
    path = tmp_path / "bad.qnd"
    path.write_text("3\n1 2\n")
    code, _ = run(capsys, "quandle", "--file", str(path))
    assert code == 2


def test_envgroup_a4(capsys):
    code, out = run(capsys, "envgroup", "--catalog", "(123)^A4")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 24
    assert data["classes"] == [1, 1, 4, 4, 4, 4, 6]
    assert data["abelian_centralizers"] is True
    assert data["commutator_order"] == 8


def test_envgroup_export(capsys):
    code, out = run(capsys, "envgroup", "--catalog", "(12)^S3", "--export-group")
    data = json.loads(out)
    assert data["group"]["order"] == 6
    assert set(data["group"]) == {"order", "mult", "names", "generators"}


def test_envgroup_presentation_export(capsys):
    code, out = run(capsys, "envgroup", "--catalog", "trivial(2)", "--export-presentation")
    assert code == 0
    assert out == "x1 x2\nx1 x2 x1^-1 x2^-1\n"


def test_adjoint_group_ref_string(capsys, tmp_path):
    spec = {
        "group_ref": "enveloping:(12)^S3",
        "V": {"class_rep": "x1", "character": {"x1": "-1"}},
        "W": {"class_rep": "x1", "character": {"x1": "-1"}},
    }
    path = tmp_path / "ref.json"
    path.write_text(json.dumps(spec))
    code, out = run(capsys, "adjoint", "--spec", str(path), "--m", "1")
    assert code == 0
    assert json.loads(out)["dim"] == 4


def test_envgroup_coset_cap_exit3(capsys, tmp_path):
    # a free-ish quandle whose envelope quotient exceeds a tiny budget
    code, _ = run(capsys, "envgroup", "--catalog", "(1234)^S4", "--max-cosets", "10")
    assert code == 3


def test_charseqs_json(capsys):
    code, out = run(capsys, "charseqs", "--max-len", "3")
    assert code == 0
    data = json.loads(out)
    assert [r["seq"] for r in data] == [[1, 1, 1]]


def test_charseqs_csv(capsys):
    code, out = run(capsys, "charseqs", "--max-len", "4", "--emit", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("1 1 1;1;")
    assert len(lines) == 3


def test_adjoint_s3(capsys, s3pair_spec):
    code, out = run(capsys, "adjoint", "--spec", s3pair_spec, "--m", "1")
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 4 == data["x_space_dim"]
    assert sum(b["rank"] for b in data["per_block"]) == 4


def test_adjoint_cap_exit3(capsys, s3pair_spec):
    code, _ = run(capsys, "adjoint", "--spec", s3pair_spec, "--m", "3", "--cap", "10")
    assert code == 3


def test_adjoint_diagonal(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"diagonal": {"q11": "-1", "q12": "z3", "q21": "1", "q22": "-1"}}))
    code, out = run(capsys, "adjoint", "--spec", str(path), "--m", "1")
    assert code == 0
    assert json.loads(out)["dim"] == 1


def test_adjoint_bad_spec_exit2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    code, _ = run(capsys, "adjoint", "--spec", str(path), "--m", "1")
    assert code == 2


def test_certify_nc(capsys):
    code, out = run(capsys, "certify", "--catalog", "Z_3^{3,2}", "--orbit-v", "4,5")
    assert code == 0
    data = json.loads(out)
    assert data["commuting"] is False
    assert all(v == "pass" for v in data["nc_battery"].values())
    assert data["adV2_certificate"] is None
    assert data["adW4_certificate"] is None


def test_certify_comm(capsys):
    code, out = run(capsys, "certify", "--catalog", "Z_3^{3,1}", "--orbit-v", "4")
    assert code == 0
    data = json.loads(out)
    assert data["commuting"] is True
    assert data["adW4_certificate"] is None


def test_certify_bad_orbit_exit2(capsys):
    code, _ = run(capsys, "certify", "--catalog", "Z_3^{3,2}", "--orbit-v", "1,4")
    assert code == 2


def test_classify_small(capsys):
    code, out = run(capsys, "classify", "--n-max", "4")
    assert code == 0
    data = json.loads(out)
    assert [s["matched_catalog_name"] for s in data["survivors"]] == [
        "Z_2^{2,2}",
        "Z_3^{3,1}",
    ]
    assert data["flagged"] == []


def test_classify_deterministic_bytes(capsys):
    _, out1 = run(capsys, "classify", "--n-max", "4", "--full")
    _, out2 = run(capsys, "classify", "--n-max", "4", "--full")
    assert out1 == out2


def test_classify_cap_exit3(capsys):
    code, _ = run(capsys, "classify", "--n-max", "9")
    assert code == 3
