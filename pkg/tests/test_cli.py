import csv
import json
import math
import subprocess
import sys

import pytest

from conftest import e2_form
from symclass.cli import EXIT_INVALID, EXIT_IO, build_report, main
from symclass.sampling import diagonal_seed
from test_paths import gamma1_family, gd_family


def triple_doc(t, **extra):
    doc = {"n": t.n, "A": t.A.tolist(), "B": t.B.tolist(), "C": t.C.tolist()}
    doc.update(extra)
    return doc


def family_doc(fam, **extra):
    doc = {"family": [dict(triple_doc(t), param=float(s)) for s, t in fam]}
    doc.update(extra)
    return doc


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
        return str(p)
    return _write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_e2(write, capsys):
    path = write("e2.json", triple_doc(e2_form(2.0, 1.0)))
    code, out, _ = run(["classify", path], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["stratum"] == "E2"
    assert rep["stability"]["status"] == "strongly-stable"
    assert rep["strongly_stable_sheet"] is True
    assert rep["b_types"] == ["-", "-"]
    assert rep["sheet_labels"] == {"SpI": "E2(-,-)", "Sp4": "E2(-,-)"}
    assert rep["component"] is not None
    assert len(rep["input_sha256"]) == 64
    assert [k["signature"] for k in rep["krein"]] == [[0, 1], [1, 0], [0, 1], [1, 0]]


def test_classify_identity(write, capsys):
    z = [[0, 0], [0, 0]]
    path = write("id.json", {"n": 2, "A": [[1, 0], [0, 1]], "B": z, "C": z})
    code, out, _ = run(["classify", path], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["stratum"] == "(2,1)" and rep["stratum_kind"] == "singular"
    assert rep["on_bifurcation_locus"] is True
    assert rep["component"] is None


def test_classify_full_matrix(write, capsys):
    from symclass.wonenburger import assemble

    M = assemble(diagonal_seed([0.4, 1.6], [1, -1]))
    code, out, _ = run(["classify", write("m.json", {"M": M.tolist()})], capsys)
    assert code == 0
    assert json.loads(out)["stratum"] == "EH+"


def test_classify_nonreal_has_no_btypes(write, capsys):
    from symclass.sampling import nonreal_seed

    code, out, _ = run(["classify", write("n.json", triple_doc(nonreal_seed(1.0, 0.6)))], capsys)
    rep = json.loads(out)
    assert rep["stratum"] == "N" and rep["b_types"] is None


def test_classify_planar(write, capsys):
    th = 0.7
    doc = {"n": 1, "A": [[math.cos(th)]], "B": [[-math.sin(th)]], "C": [[math.sin(th)]]}
    code, out, _ = run(["classify", write("p.json", doc)], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["planar"]["SpI_GL1"]["chart"] == "circle"
    assert rep["planar"]["SpI_GL1"]["value"] == pytest.approx(th)


def test_quotient_flag(write, capsys):
    path = write("h.json", triple_doc(diagonal_seed([1.3, 2.0], [1, -1])))
    _, out, _ = run(["classify", path, "--quotient", "Sp4"], capsys)
    rep = json.loads(out)
    assert rep["quotient"] == "Sp4"
    assert rep["component"] == rep["components"]["Sp4"]


def test_invalid_triple_lists_residuals(write, capsys):
    path = write("bad.json", {"n": 2, "A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]], "C": [[1, 0], [0, 1]]})
    code, out, err = run(["classify", path], capsys)
    assert code == EXIT_INVALID
    assert out == ""
    assert "residual" in err


def test_malformed_json(write, capsys):
    code, _, err = run(["classify", write("broken.json", "{not json")], capsys)
    assert code == EXIT_IO
    assert "error" in err


def test_missing_file(tmp_path, capsys):
    code, _, _ = run(["classify", str(tmp_path / "nope.json")], capsys)
    assert code == EXIT_IO


def test_schema_errors(write, capsys):
    assert run(["classify", write("a.json", [1, 2])], capsys)[0] == EXIT_INVALID
    assert run(["classify", write("b.json", {"n": 3})], capsys)[0] == EXIT_INVALID
    assert run(["classify", write("c.json", {"n": 2, "A": [[1, 0]], "B": [], "C": []})], capsys)[0] == EXIT_INVALID


def test_determinism_and_round_trip(write, capsys):
    path = write("e2.json", triple_doc(e2_form(2.3, 0.4, 1, -1)))
    _, a, _ = run(["classify", path], capsys)
    _, b, _ = run(["classify", path], capsys)
    assert a == b
    t = e2_form(2.3, 0.4, 1, -1)
    from symclass.cli import load_document

    _, digest = load_document(path)
    assert json.loads(a) == json.loads(json.dumps(build_report(t, 1e-9, "SpI", digest)))


def test_tolerance_env(write, capsys, monkeypatch):
    path = write("e2.json", triple_doc(e2_form(2.0, 1.0)))
    monkeypatch.setenv("SYMCLASS_TOL", "1e-7")
    assert json.loads(run(["classify", path], capsys)[1])["tol"] == 1e-7
    assert json.loads(run(["classify", path, "--tol", "1e-8"], capsys)[1])["tol"] == 1e-8
    monkeypatch.setenv("SYMCLASS_TOL", "abc")
    assert run(["classify", path], capsys)[0] == EXIT_INVALID


def test_normal_form_command(write, capsys):
    code, out, _ = run(["normal-form", write("e2.json", triple_doc(e2_form(2.0, 1.0, 1, 1)))], capsys)
    assert code == 0
    nf = json.loads(out)
    assert nf["stratum"] == "E2" and nf["signs"] == ["+", "+"]
    assert nf["params"] == pytest.approx([2.0, 1.0])


def test_family_gamma1(write, capsys, tmp_path):
    path = write("fam.json", family_doc(gamma1_family()))
    csv_path = tmp_path / "out.csv"
    code, out, _ = run(["family", path, "--csv-out", str(csv_path)], capsys)
    assert code == 0
    rows = [ln for ln in out.splitlines() if "gamma_1" in ln]
    assert len(rows) == 1
    assert out.splitlines()[-1].startswith("verdict: obstructed(event ")
    with open(csv_path, newline="", encoding="utf-8") as fh:
        table = list(csv.reader(fh))
    assert table[0] == ["param", "tau", "delta", "label"]
    assert len(table) == 201


def test_family_json(write, capsys):
    path = write("fam.json", family_doc(gamma1_family(50)))
    code, out, _ = run(["family", path, "--json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["obstructed"] is True and doc["k_max"] == 6


def test_family_constant(write, capsys):
    t = e2_form(2.0, 1.0)
    code, out, _ = run(["family", write("c.json", family_doc([(s, t) for s in range(5)]))], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "verdict: single-component"
    assert len(out.splitlines()) == 2


def test_family_double_wall(write, capsys):
    code, out, _ = run(["family", write("gd.json", family_doc(gd_family()))], capsys)
    assert code == 0
    assert "gamma_d" in out
    assert out.splitlines()[-1] == "verdict: single-component"


def test_family_errors(write, capsys):
    t = e2_form(2.0, 1.0)
    assert run(["family", write("nm.json", family_doc([(0, t), (1, t), (0.5, t)]))], capsys)[0] == EXIT_INVALID
    jump = family_doc([(0, e2_form(2.0, 1.0, 1, 1)), (1, e2_form(2.0, 1.0, -1, -1))])
    code, _, err = run(["family", write("sp.json", jump)], capsys)
    assert code == EXIT_INVALID and "refine" in err


def test_diagram(tmp_path, write, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(["diagram", "--out", str(a)], capsys)[0] == 0
    assert run(["diagram", "--out", str(b)], capsys)[0] == 0
    text = a.read_text()
    assert text == b.read_text()
    assert text.startswith("<svg")
    for label in ("E2 4/4", "EH+ 4/2", "EH- 4/2", "H++ 4/1", "H-- 4/1", "H-+ 4/1", "N 1/1"):
        assert label in text
    assert "stroke-dasharray" not in text


def test_diagram_resonance_lines(tmp_path, capsys):
    out = tmp_path / "k.svg"
    run(["diagram", "--k-max", "4", "--out", str(out)], capsys)
    assert out.read_text().count("stroke-dasharray") == 2


def test_diagram_overlay(tmp_path, write, capsys):
    fam = write("fam.json", family_doc(gamma1_family()))
    out = tmp_path / "o.svg"
    assert run(["diagram", "--overlay", fam, "--out", str(out)], capsys)[0] == 0
    assert "<title>gamma_1 G1" in out.read_text()


def test_diagram_unwritable(tmp_path, capsys):
    assert run(["diagram", "--out", str(tmp_path / "missing" / "x.svg")], capsys)[0] == EXIT_IO


def test_diagram_bad_range(tmp_path, capsys):
    code = run(["diagram", "--xrange", "1", "-1", "--out", str(tmp_path / "x.svg")], capsys)[0]
    assert code == EXIT_INVALID


def test_module_entry_point(write):
    path = write("e2.json", triple_doc(e2_form(2.0, 1.0)))
    proc = subprocess.run([sys.executable, "-m", "symclass", "classify", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["stratum"] == "E2"


def test_classify_jordan_double_wall(write, capsys):
    from symclass.sampling import jordan_seed

    code, out, _ = run(["classify", write("j.json", triple_doc(jordan_seed(0.3, 1.0, 0.5)))], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["stratum"] == "Gd^2"
    assert rep["stability"]["status"] == "unstable"
    assert [k["signature"] for k in rep["krein"]] == [[1, 1], [1, 1]]
