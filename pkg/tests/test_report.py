import json

from cdlattice import analyze, construct_family, enumerate_subgroups
from cdlattice.families import dihedral, modular, quaternion
from cdlattice.plotting import plot_delta_bars, plot_hasse
from cdlattice.report import dumps, serialize_report, summarize, to_csv
from cdlattice.verify import claim, scan_order16


def test_q8_summary():
    g = construct_family(quaternion(3))
    lattice = enumerate_subgroups(g)
    s = summarize("Q8", g, lattice, analyze(g, lattice), counts=True)
    row = s.row()
    assert (row["order"], row["lattice"], row["cd"], row["delta"], row["m_star"]) == (8, 6, 5, 1, 16)
    assert row["counts"] == [1, 1, 3, 1]
    text, doc = serialize_report([s], "Q8")
    assert text.startswith("Q8\n")
    assert doc["records"][0]["delta"] == 1
    assert json.loads(dumps(doc)) == doc


def test_empty_report():
    text, doc = serialize_report([])
    assert "(no rows)" in text
    assert doc["summary"] == {"records": 0, "claims": 0, "passed": 0, "failed": 0, "skipped": 0}
    assert to_csv(doc) == ""


def test_order16_report():
    text, doc = serialize_report(scan_order16(), "order 16", sort=False)
    assert doc["summary"]["claims"] == 15
    assert doc["summary"]["failed"] == 0
    assert "15/15 claims passed" in text
    lines = to_csv(doc).splitlines()
    assert lines[0].startswith("claim_id,group,expected,actual,pass")
    assert len(lines) == 16


def test_failed_claims_counted_and_sorted():
    rows = [claim("b", "G", 1, 2), claim("a", "G", 1, 1)]
    text, doc = serialize_report(rows, sort=True)
    assert [r["claim_id"] for r in doc["records"]] == ["a", "b"]
    assert doc["summary"]["failed"] == 1
    assert "1/2 claims passed" in text


def test_figures(tmp_path):
    g = construct_family(modular(2, 3, 1))
    lattice = enumerate_subgroups(g)
    out = plot_hasse(lattice, analyze(g, lattice), tmp_path / "m.png", "M2(3,1)")
    assert out.stat().st_size > 1000
    out = plot_hasse(enumerate_subgroups(construct_family(dihedral(3))), None, tmp_path / "d.svg")
    assert out.read_text().lstrip().startswith("<?xml")
    out = plot_delta_bars(["a", "b"], [3, 80], 6, tmp_path / "bars.pdf", "t")
    assert out.read_bytes()[:4] == b"%PDF"
