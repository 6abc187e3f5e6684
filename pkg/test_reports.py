import pytest

import reports
from rmatrix import build_R
from errors import SpecError


def test_json_deterministik():
    payload = {"b": [1, 2], "a": {"y": True, "x": None}}
    assert reports.render(payload, "json") == reports.render(dict(reversed(list(payload.items()))), "json")
    assert reports.render(payload, "json").startswith('{\n  "a"')


def test_teks():
    text = reports.render({"pass": True, "grades": [1, 2]}, "text")
    assert "pass: ya" in text
    assert "- 1" in text


def test_latex(generic2):
    R = build_R(generic2, 2)
    body = reports.latex_rmatrix(R)
    document = reports.render(R.to_dict(), "latex", body)
    assert document.startswith("\\documentclass{article}")
    assert "\\begin{tabular}" in document
    assert "t^{(12)}_{(12)}" in body


def test_baca_ulang_tabel(generic2):
    R = build_R(generic2, 3)
    t = reports.load_rmatrix_table(R.to_dict(), generic2)
    assert t.same_as(R.t)
    assert t.K == 3


def test_format_tak_dikenal(generic2):
    with pytest.raises(SpecError):
        reports.render({}, "yaml")
    with pytest.raises(SpecError):
        reports.load_rmatrix_table({"table": []}, generic2)
