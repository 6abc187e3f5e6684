import pytest

from quotient import build_ideal
from rmatrix import build_R, perturb
from yangbaxter import yb_check_structural, yb_check_bruteforce
from errors import PreconditionError


def test_generik_lolos(generic2):
    R = build_R(generic2, 2)
    structural = yb_check_structural(R, 2, 2)
    brute = yb_check_bruteforce(R, 2)
    assert structural.passed
    assert brute.passed
    assert len(structural.checked) == 9


def test_injeksi_kesalahan_gagal_di_grade_satu(generic2):
    R = perturb(build_R(generic2, 2), (1,), (1,), 1)
    structural = yb_check_structural(R, 2, 2)
    brute = yb_check_bruteforce(R, 2)
    assert (1, 1) in structural.failing_grades
    assert structural.failing_grades == brute.failing_grades
    # komponen (l, 0) dan (0, n) selalu nol
    assert all(l and n for l, n in structural.failing_grades)
    entry = structural.to_dict()["grades"][4]
    assert entry["grade"] == [1, 1]
    assert not entry["pass"]
    assert "first_residual" in entry


def test_paralel_sama(generic2):
    R = perturb(build_R(generic2, 2), (1,), (1,), 1)
    assert yb_check_structural(R, 2, 2, jobs=4).failing_grades == yb_check_structural(R, 2, 2).failing_grades


def test_kuosien_minus_one(minus_one):
    ideal = build_ideal(minus_one, 3)
    R = build_R(minus_one, 3, ideal)
    assert yb_check_structural(R, 3, 3).passed
    assert yb_check_bruteforce(R, 2).passed


def test_bound_melebihi_r(generic2):
    R = build_R(generic2, 2)
    with pytest.raises(PreconditionError):
        yb_check_structural(R, 3, 2)
    with pytest.raises(PreconditionError):
        yb_check_bruteforce(R, 3)


@pytest.mark.slow
def test_generik_grade_tiga(generic2):
    R = build_R(generic2, 3)
    assert yb_check_structural(R, 3, 3).passed
    assert yb_check_bruteforce(R, 3).passed


def test_kuosien_minus_one_grade_empat(minus_one):
    ideal = build_ideal(minus_one, 4)
    R = build_R(minus_one, 4, ideal)
    structural = yb_check_structural(R, 4, 4)
    assert structural.passed
    assert len(structural.checked) == 25
    assert yb_check_bruteforce(R, 4).passed
