import json

from torsion_atlas.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_classify_by_j(capsys):
    rc, out, _ = run(capsys, "classify", "--j=-25/2")
    assert rc == 0
    rep = json.loads(out)
    assert rep["torsion"] == [1, 15]


def test_classify_by_model(capsys):
    rc, out, _ = run(capsys, "classify", "--ainvs", "0,0,0,0,1")
    assert rc == 0
    assert json.loads(out)["torsion"] == [8, 24]


def test_classify_j_zero_is_data_error(capsys):
    rc, _, err = run(capsys, "classify", "--j", "0")
    assert rc == 2
    assert "model" in err


def test_classify_usage_errors(capsys):
    rc, _, _ = run(capsys, "classify")
    assert rc == 1
    rc, _, _ = run(capsys, "classify", "--j", "1", "--ainvs", "0,0,0,0,1")
    assert rc == 1
    rc, _, _ = run(capsys, "classify", "--ainvs", "0,0,0,0")
    assert rc == 2


def test_classify_singular_model(capsys):
    rc, _, err = run(capsys, "classify", "--ainvs", "0,0,0,0,0")
    assert rc == 2


def test_batch_roundtrip(tmp_path, capsys):
    infile = tmp_path / "in.jsonl"
    rows = [
        {"label": "11a1", "ainvs": ["0", "-1", "1", "-10", "-20"], "expected": [5, 5]},
        {"j": "-25/2"},
        {"label": "九", "ainvs": ["0", "0", "0", "0", "0"]},
    ]
    infile.write_text("".join(json.dumps(r) + "\n" for r in rows))
    outfile = tmp_path / "out.jsonl"
    rc, _, _ = run(capsys, "batch", "--in", str(infile), "--out", str(outfile))
    assert rc == 2  # one row failed
    lines = [json.loads(ln) for ln in outfile.read_text().splitlines()]
    assert len(lines) == 3
    assert lines[0]["torsion"] == [5, 5] and lines[0]["matches_expected"] is True
    assert lines[1]["torsion"] == [1, 15]
    assert "error" in lines[2]


def test_batch_order_stable_across_jobs(tmp_path, capsys):
    import importlib.resources as res
    src = res.files("torsion_atlas.data").joinpath("curves_cm.jsonl").read_text()
    infile = tmp_path / "cm.jsonl"
    infile.write_text(src)
    out1 = tmp_path / "o1.jsonl"
    out2 = tmp_path / "o2.jsonl"
    rc1, _, _ = run(capsys, "batch", "--in", str(infile), "--out", str(out1), "--jobs", "1")
    rc2, _, _ = run(capsys, "batch", "--in", str(infile), "--out", str(out2), "--jobs", "4")
    assert rc1 == rc2 == 0
    assert out1.read_bytes() == out2.read_bytes()
    recs = [json.loads(ln) for ln in out1.read_text().splitlines()]
    assert all(r["matches_expected"] for r in recs)


def test_batch_empty_input(tmp_path, capsys):
    infile = tmp_path / "empty.jsonl"
    infile.write_text("")
    outfile = tmp_path / "out.jsonl"
    rc, _, _ = run(capsys, "batch", "--in", str(infile), "--out", str(outfile))
    assert rc == 0
    assert outfile.read_text() == ""


def test_batch_unreadable_input(capsys):
    rc, _, _ = run(capsys, "batch", "--in", "/nonexistent/nope.jsonl")
    assert rc == 1


def test_catalog_dump(capsys):
    rc, out, _ = run(capsys, "catalog")
    assert rc == 0
    data = json.loads(out)
    assert len(data["entries"]) == 24


def test_group_type(capsys):
    rc, out, _ = run(capsys, "group-type", "--gens", "(1,2,3,4);(2,4)")
    assert rc == 0
    rep = json.loads(out)
    assert rep == {"order": 8, "exponent": 4, "class": 2, "gen_d4_type": True}
    rc, out, _ = run(capsys, "group-type", "--gens", "(1,2,3,4,5,6,7,8)")
    assert rc == 0 and json.loads(out)["exponent"] == 8
    rc, out, _ = run(capsys, "group-type", "--gens", "(1,2,3);(1,2)")
    assert rc == 0 and json.loads(out)["class"] == "NotNilpotent"


def test_group_type_malformed(capsys):
    rc, _, _ = run(capsys, "group-type", "--gens", "(1,2)(2,3)")
    assert rc == 2


def test_group_type_cap(capsys, monkeypatch):
    monkeypatch.setenv("TORSION_ATLAS_MAX_CLOSURE", "unset-after")
    rc, _, err = run(capsys, "--max-closure", "4", "group-type", "--gens", "(1,2,3,4);(2,4)")
    assert rc == 4


def test_audit_gl2_modulus_3(capsys):
    rc, out, _ = run(capsys, "audit-gl2", "--modulus", "3")
    assert rc == 0
    rows = [json.loads(ln) for ln in out.splitlines()]
    assert rows and all(r["contained_in_target"] for r in rows)


def test_audit_gl2_modulus_9(capsys):
    rc, out, _ = run(capsys, "audit-gl2", "--modulus", "9")
    assert rc == 0
    rep = json.loads(out)
    assert rep["qualifies_as_image"] and rep["satisfies_prop2"]


def test_audit_gl2_unsupported(capsys):
    rc, _, _ = run(capsys, "audit-gl2", "--modulus", "7")
    assert rc == 1


def test_audit_gl2_modulus_25_reports_the_defect(capsys):
    # property (2) fails for the stated mod-25 group (see the decision notes),
    # so the faithful exit code is 3, not 0
    rc, out, _ = run(capsys, "audit-gl2", "--modulus", "25")
    assert rc == 3
    rep = json.loads(out)
    assert rep["qualifies_as_image"] is True
    assert rep["satisfies_prop2"] is False
