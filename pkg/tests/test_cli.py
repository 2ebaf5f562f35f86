import json

import pytest

from cdlattice.cli import main
from cdlattice.families import WREATH_GENERATORS
from cdlattice.fileformat import serialize_permutation_group


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_then_analyze(tmp_path, capsys):
    path = tmp_path / "m.grp"
    code, _, _ = run(capsys, "construct", "--family", "modular:p=3,n=2,m=1", "-o", str(path))
    assert code == 0 and path.read_text().startswith("cdgroup 1\nname M3(2,1)\norder 27\n")
    code, out, _ = run(capsys, "analyze", str(path), "--json", "--cd", "--axioms", "--counts")
    assert code == 0
    doc = json.loads(out)
    assert doc["records"][0]["delta"] == 4
    assert doc["records"][0]["axioms"] == "pass"
    assert len(doc["cd_members"]) == 6


def test_analyze_family_with_outputs(tmp_path, capsys):
    fig, table = tmp_path / "q8.png", tmp_path / "q8.csv"
    code, out, _ = run(capsys, "analyze", "--family", "quaternion:n=3", "--figure", str(fig),
                       "--csv", str(table))
    assert code == 0
    assert "Q8" in out
    assert fig.exists() and table.read_text().startswith("label,order")


def test_verify_suites(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "order16", "--figure", str(tmp_path / "o.png"))
    assert code == 0 and "15/15 claims passed" in out
    code, out, _ = run(capsys, "verify", "main-theorem", "--p", "3", "--max-order", "81")
    assert code == 0
    path = tmp_path / "w.grp"
    path.write_text(serialize_permutation_group(9, WREATH_GENERATORS, "C3wrC3"))
    code, out, _ = run(capsys, "verify", "lemmas", str(path))
    assert code == 0, out
    assert "jdl3-n4" in out


def test_scan(tmp_path, capsys):
    d = tmp_path / "groups"
    d.mkdir()
    for spec, name in [("cyclic:p=2,k=4", "c16"), ("modular:p=2,n=3,m=1", "m231"),
                       ("abelian:p=2,s=3,t=1", "c8c2")]:
        run(capsys, "construct", "--family", spec, "-o", str(d / f"{name}.grp"))
    code, out, _ = run(capsys, "scan", str(d), "--bound", "6", "--jobs", "1", "--json")
    assert code == 0
    assert json.loads(out)["selected"] == ["c16.grp", "m231.grp"]
    (d / "w.grp").write_text(serialize_permutation_group(9, WREATH_GENERATORS))
    code, out, _ = run(capsys, "scan", str(d), "--bound", "12", "--jobs", "2")
    assert code == 1
    assert "G not in CD(G)" in out


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "/nonexistent/file"],
    ["construct", "--family", "modular:p=2,n=2,m=1"],
    ["scan", "/nonexistent", "--bound", "3"],
])
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("cdlattice: error:")


def test_bad_table_file(tmp_path, capsys):
    path = tmp_path / "bad.grp"
    path.write_text("cdgroup 1\norder 2\n0 1\n1 1\n")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "error" in err
