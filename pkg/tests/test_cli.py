"""CLI verbs: schemas, exit codes, witnesses, determinism."""

import json

from homometry.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run_cli(capsys, argv)
    return code, json.loads(out)


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


TILE_K2 = {"points": [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1]]}
LAT_K2 = {"basis": [[3, -1], [2, 1]]}


def test_covariogram_verb(tmp_path, capsys):
    path = write_doc(tmp_path, "k.json", {"points": [[0], [1], [3]]})
    code, doc = run_json(capsys, ["covariogram", path])
    assert code == 0 and doc["status"] == "ok"
    entries = {tuple(e["u"]): e["count"] for e in doc["payload"]["entries"]}
    assert entries[(0,)] == 3 and entries[(3,)] == 1


def test_homometric_verb_identical_sets(tmp_path, capsys):
    path = write_doc(tmp_path, "pair.json", {"K": TILE_K2, "L": TILE_K2})
    code, doc = run_json(capsys, ["homometric", path])
    assert code == 0
    assert doc["payload"]["result"] is True


def test_trivially_homometric_verb(tmp_path, capsys):
    reflected = {"points": [[-x, -y] for x, y in TILE_K2["points"]]}
    path = write_doc(tmp_path, "pair.json", {"K": TILE_K2, "L": reflected})
    code, doc = run_json(capsys, ["trivially-homometric", path])
    assert code == 0 and doc["payload"]["result"] is True


def test_lattice_convex_with_witness(tmp_path, capsys):
    doc_in = {"points": [[0], [2]], "lattice": {"basis": [[1]]}}
    path = write_doc(tmp_path, "k.json", doc_in)
    code, doc = run_json(capsys, ["lattice-convex", path])
    assert code == 0
    assert doc["payload"]["result"] is False
    assert doc["payload"]["witness"] == [1]


def test_direct_sum_verb(tmp_path, capsys):
    path = write_doc(
        tmp_path,
        "st.json",
        {"S": {"points": [[0], [1], [4], [5]]}, "T": {"points": [[0], [2], [8], [10]]}},
    )
    code, doc = run_json(capsys, ["direct-sum", path])
    assert code == 0 and doc["payload"]["direct"] is True
    assert doc["payload"]["sum"]["points"] == [[x] for x in range(16)]


def test_wset_verb_six_vectors(tmp_path, capsys):
    path = write_doc(tmp_path, "wt.json", {"T": TILE_K2, "L": LAT_K2})
    code, doc = run_json(capsys, ["wset", path])
    assert code == 0
    assert doc["payload"]["count"] == 6
    assert all(w == "4/5" for w in doc["payload"]["widths"])


def test_width_verb_both_modes(tmp_path, capsys):
    path = write_doc(tmp_path, "w1.json", dict(TILE_K2, direction=[1, 1]))
    code, doc = run_json(capsys, ["width", path])
    assert code == 0 and doc["payload"]["width"] == 2
    path = write_doc(tmp_path, "w2.json", dict(TILE_K2, lattice={"basis": [[1, 0], [0, 1]]}))
    code, doc = run_json(capsys, ["width", path])
    assert code == 0 and doc["payload"]["lattice_width"] == 1


def test_verify_tiling_ok_and_violation(tmp_path, capsys):
    good = {"M": {"basis": [[1, 0], [0, 1]]}, "L": LAT_K2, "T": TILE_K2}
    path = write_doc(tmp_path, "good.json", good)
    code, doc = run_json(capsys, ["verify-tiling", path])
    assert code == 0 and doc["payload"]["verified"] is True

    bad = {
        "M": {"basis": [[1, 0], [0, 1]]},
        "L": {"basis": [[2, 0], [0, 2]]},
        "T": {"points": [[0, 0], [2, 0], [0, 1], [1, 1]]},
    }
    path = write_doc(tmp_path, "bad.json", bad)
    code, doc = run_json(capsys, ["verify-tiling", path])
    assert code == 1
    assert doc["status"] == "violation"
    assert "witnesses" in doc


def test_check_abc_verb(tmp_path, capsys):
    doc_in = {
        "tiling": {"M": {"basis": [[1, 0], [0, 1]]}, "L": LAT_K2, "T": TILE_K2},
        "S": {"points": [[0, 0], [3, -1], [2, 1]]},
    }
    path = write_doc(tmp_path, "abc.json", doc_in)
    code, doc = run_json(capsys, ["check-abc", path])
    assert code == 0
    assert doc["payload"]["a"]["holds"] is True
    assert doc["payload"]["b"]["holds"] is True
    assert doc["payload"]["c"]["holds"] is True


def test_enum_tiles_verb(tmp_path, capsys):
    path = write_doc(tmp_path, "b.json", {"basis": [[1, 0], [2, 5]]})
    code, doc = run_json(capsys, ["enum-tiles", path])
    assert code == 0
    assert doc["payload"]["count"] >= 1


def test_classify2d_verb_small(capsys):
    code, doc = run_json(capsys, ["classify2d", "--det-range", "7:7"])
    assert code == 0
    payload = doc["payload"]
    assert payload["noncentrally_symmetric_classes"] == []
    assert len(payload["centrally_symmetric_classes"]) == 1


def test_classify2d_text_report(capsys):
    code, out = run_cli(capsys, ["classify2d", "--det-range", "7:7", "--report", "text"])
    assert code == 0
    assert "centrally symmetric classes: 1" in out


def test_classify2d_deterministic_output(capsys):
    code1, out1 = run_cli(capsys, ["classify2d", "--det-range", "7:8"])
    code2, out2 = run_cli(capsys, ["classify2d", "--det-range", "7:8"])
    assert code1 == code2 == 0
    assert out1 == out2
    code3, out3 = run_cli(capsys, ["classify2d", "--det-range", "7:8", "--workers", "2"])
    assert code3 == 0
    doc1, doc3 = json.loads(out1), json.loads(out3)
    assert doc1["payload"]["classes"] == doc3["payload"]["classes"]
    assert doc1["payload"]["cases"] == doc3["payload"]["cases"]


def test_gen_example_planar_roundtrip(tmp_path, capsys):
    code, doc = run_json(capsys, ["gen-example", "planar", "--k", "2"])
    assert code == 0
    pair = doc["payload"]
    assert pair["nontrivial"] is True
    # emitted document re-parses and re-verifies
    path = write_doc(tmp_path, "tiling.json", pair["tiling"])
    code, doc = run_json(capsys, ["verify-tiling", path])
    assert code == 0


def test_gen_example_product(tmp_path, capsys):
    code, left = run_json(capsys, ["gen-example", "planar", "--k", "1"])
    lpath = write_doc(tmp_path, "left.json", left["payload"])
    code, doc = run_json(
        capsys, ["gen-example", "product", "--left", lpath, "--right", lpath]
    )
    assert code == 0
    assert doc["payload"]["nontrivial"] is True
    assert len(doc["payload"]["tiling"]["T"]["points"][0]) == 4


def test_gen_example_counterexamples(capsys):
    code, doc = run_json(capsys, ["gen-example", "counterexample-ab", "--d", "3"])
    assert code == 0
    assert doc["payload"]["S"]["points"][0] == [0, 0, 0]
    code, doc = run_json(capsys, ["gen-example", "counterexample-bc", "--d", "3"])
    assert code == 0


def test_gen_example_parabola(capsys):
    code, doc = run_json(capsys, ["gen-example", "parabola", "--n", "1"])
    assert code == 0 and doc["payload"]["nontrivial"] is True


def test_irregular_catalog_verb(capsys):
    code, doc = run_json(capsys, ["irregular-catalog"])
    assert code == 0
    seg = doc["payload"]["segments_1d"]
    assert seg["checks"]["S_intrinsically_lattice_convex"] is False
    assert seg["sum"]["points"] == [[x] for x in range(16)]


def test_schema_error_exit_code(tmp_path, capsys):
    path = write_doc(tmp_path, "bad.json", {"points": [[0.5, 0]]})
    code, doc = run_json(capsys, ["covariogram", path])
    assert code == 2
    assert doc["status"] == "error"
    assert "path" in doc


def test_lower_dimensional_tile_error(tmp_path, capsys):
    path = write_doc(
        tmp_path,
        "flat.json",
        {"T": {"points": [[0, 0], [1, 0]]}, "L": {"basis": [[1, 0], [0, 1]]}},
    )
    code, doc = run_json(capsys, ["wset", path])
    assert code == 2 and doc["status"] == "error"


def test_rationals_never_serialized_as_floats(capsys):
    code, doc = run_json(capsys, ["gen-example", "counterexample-ab", "--d", "3"])
    text = json.dumps(doc)
    assert "0.5" not in text
    assert "1/2" in text
