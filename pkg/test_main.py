import json

import pytest

import scalars
from main import main
from specfile import parse_spec


def _run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    text = out.read_text(encoding="utf-8") if out.exists() else None
    return code, text


def test_rmatrix_grade_dua(tmp_path):
    code, text = _run(tmp_path, "rmatrix", "--spec", "preset:generic-2", "--grade", "2")
    assert code == 0
    data = json.loads(text)
    row = next(r for r in data["table"] if r["lower"] == [1, 2] and r["upper"] == [1, 2])
    assert row["coeff"] == "1/(1 - q[1,2]^-1*q[2,1]^-1)"
    assert data["provenance"] == {"0": "unique", "1": "unique", "2": "unique"}


def test_output_deterministik(tmp_path):
    _, first = _run(tmp_path, "rmatrix", "--spec", "preset:generic-2", "--grade", "3", name="a.json")
    _, second = _run(tmp_path, "rmatrix", "--spec", "preset:generic-2", "--grade", "3", "--jobs", "3",
                     name="b.json")
    assert first == second


def test_obstruksi_minus_one(tmp_path):
    code, text = _run(tmp_path, "rmatrix", "--spec", "preset:minus-one", "--grade", "2")
    assert code == 2
    obstruction = json.loads(text)["obstruction"]
    assert obstruction["multidegree"] == [2]
    assert obstruction["constants"]["basis"] == ["e[+1 +1]"]


def test_kuosien_minus_one(tmp_path):
    code, text = _run(tmp_path, "rmatrix", "--spec", "preset:minus-one", "--grade", "3", "--quotient")
    assert code == 0
    data = json.loads(text)
    assert data["provenance"]["2"] == "unique-modulo-quotient"
    assert data["ideal"]["generators"][0]["element"] == "e[+1 +1]"


def test_spesifikasi_rusak(tmp_path):
    code, _ = _run(tmp_path, "rmatrix", "--spec", "preset:tidak-ada")
    assert code == 3
    code, _ = _run(tmp_path, "rmatrix", "--spec", "preset:generic-2", "--grade", "dua")
    assert code == 3


def test_determinan(tmp_path):
    code, text = _run(tmp_path, "determinant", "--spec", "preset:generic-2", "--grade", "2")
    assert code == 0
    values = {tuple(v["multidegree"]): v["determinant"] for v in json.loads(text)["determinants"]}
    spec = parse_spec("preset:generic-2")
    assert scalars.parse_scalar(values[(1, 1)], spec.field) == 1 - spec.sigma(1, 2)


def test_konstanta_multidegree(tmp_path):
    code, text = _run(tmp_path, "constants", "--spec", "preset:minus-one", "--multidegree", "2",
                      "--kind", "left_minus")
    assert code == 0
    assert json.loads(text)["reports"][0]["basis"] == ["e[+1 +1]"]


def test_serre(tmp_path):
    code, text = _run(tmp_path, "serre", "--spec", "preset:sl3")
    assert code == 0
    data = json.loads(text)
    assert data["cartan_matrix"] == [[2, -1], [-1, 2]]
    assert all(r["constant"] for r in data["relations"])


def test_yb_check(tmp_path):
    code, text = _run(tmp_path, "yb-check", "--spec", "preset:generic-2", "--grade", "2")
    assert code == 0
    data = json.loads(text)
    assert data["agree"]
    assert data["structural"]["pass"] and data["bruteforce"]["pass"]


def test_pasangan(tmp_path):
    code, text = _run(tmp_path, "pairs", "--spec", "preset:sl3-twisted", "--pair", "1,2")
    assert code == 0
    data = json.loads(text)
    assert [(p["sigma"], p["rho"]) for p in data["admissible"]] == [(1, 2)]
    assert [r["kind"] for r in data["rejected_types"]] == ["minus-plus", "plus-plus", "minus-minus"]


def test_deformasi(tmp_path):
    code, text = _run(tmp_path, "deform", "--spec", "preset:sl3-twisted", "--grade", "1")
    assert code == 0
    assert json.loads(text)["first_order_yb"]["pass"]


def test_deformasi_tanpa_pasangan(tmp_path):
    code, _ = _run(tmp_path, "deform", "--spec", "preset:generic-2", "--grade", "1")
    assert code == 3


def test_hopf_check(tmp_path):
    code, text = _run(tmp_path, "hopf-check", "--spec", "preset:generic-2", "--grade", "1")
    assert code == 0
    titles = [c["title"] for c in json.loads(text)["checks"]]
    assert titles == ["hopf-axioms", "intertwiner"]


def test_format_teks_ke_stdout(capsys):
    assert main(["pairs", "--spec", "preset:generic-2", "--format", "text"]) == 0
    assert "admissible" in capsys.readouterr().out


def test_format_latex(tmp_path):
    code, text = _run(tmp_path, "rmatrix", "--spec", "preset:generic-2", "--format", "latex")
    assert code == 0
    assert "\\begin{tabular}" in text


def test_perintah_tak_dikenal():
    with pytest.raises(SystemExit):
        main(["terbang", "--spec", "preset:generic-2"])
