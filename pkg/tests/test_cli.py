import json

from nilj import catalog, reports
from nilj.cli import main


def test_tables_center(capsys):
    assert main(["tables", "--which", "center"]) == 0
    out = capsys.readouterr().out
    assert "section: PASS" in out


def test_tables_h2_reports_failures(capsys):
    assert main(["tables", "--which", "h2"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "J4,6" in out


def test_cohomology_command(capsys):
    assert main(["cohomology", "J3,2", "--assoc"]) == 0
    out = capsys.readouterr().out
    assert "dim H2 = 4" in out and "dim H2_assoc = 3" in out


def test_extend_command(capsys):
    code = main([
        "extend", "J3,2", "--cocycle", "d(b,c)", "--cocycle", "d(a,b)", "--diagnose",
    ])
    assert code == 0
    out = capsys.readouterr().out
    doc = json.loads(out[: out.index("joint radical")])
    assert catalog.parse_algebra(doc) == catalog.instantiate("J5,31")
    assert "has central component = False" in out


def test_invariants_command(capsys):
    assert main(["invariants", "J2,2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["der_dim"] == 2 and data["power_dims"] == [1, 0]


def test_iso_search_command(capsys):
    assert main(["iso", "--search", "--field", "p:5", "R_J2", "J4,10"]) == 0
    assert "isomorphism found over F5" in capsys.readouterr().out
    assert main(["iso", "--search", "--field", "p:5", "J5,2", "J5,3"]) == 1


def test_iso_map_command(tmp_path, capsys):
    path = tmp_path / "map.txt"
    path.write_text("1 0\n0 1\n", encoding="utf-8")
    assert main(["iso", "--map", str(path), "J2,2", "J2,2"]) == 0
    path.write_text("0 1\n1 0\n", encoding="utf-8")
    assert main(["iso", "--map", str(path), "J2,2", "J2,2"]) == 1


def test_orbits_command(capsys):
    assert main(["orbits", "J1,1", "--field", "p:5", "--grassmann", "1"]) == 0
    out = capsys.readouterr().out
    assert "admissible 1-subspaces: 1" in out


def test_lemma_a_command(capsys):
    assert main(["lemma-a", "--alpha", "2,0,0"]) == 0
    out = capsys.readouterr().out
    assert "1/2" in out
    assert main(["lemma-a", "--alpha", "0,0,5"]) == 2


def test_algebra_documents_via_file(tmp_path, capsys):
    doc = catalog.serialize_algebra(catalog.instantiate("J2,2"), "J2,2")
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["invariants", f"@{path}"]) == 0


def test_verify_catalog_exit_code(capsys):
    # two bundled entries fail the Jordan identity, so verification fails
    assert main(["verify-catalog"]) == 1
    out = capsys.readouterr().out
    assert "J5,2" in out and "J5,3" in out


def test_report_document_is_deterministic():
    doc1 = reports.ReportDocument((reports.center_table(), reports.assoc_table()))
    doc2 = reports.ReportDocument((reports.center_table(), reports.assoc_table()))
    assert doc1.render_text() == doc2.render_text()
    assert doc1.to_json() == doc2.to_json()
