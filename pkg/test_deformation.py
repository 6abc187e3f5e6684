import pytest

from algebra import tensor_of
from quotient import build_ideal
from rmatrix import build_R
from specfile import spec_from_dict
from deformation import (
    PAIR_SIGNS, find_admissible_pairs, make_pair, deform_R, combine_deformations,
    verify_first_order_yb, check_rejected_types, REJECTED_KINDS,
)
from errors import PreconditionError


def test_generik_tanpa_pasangan(generic2):
    assert find_admissible_pairs(generic2) == []


def test_pasangan_sl3_twisted(sl3_twisted):
    pairs = find_admissible_pairs(sl3_twisted)
    assert [(p.sigma, p.rho) for p in pairs] == [(1, 2)]
    assert not pairs[0].degenerate
    assert pairs[0].K_cartan == (0, 0, 0, 1)
    assert pairs[0].relation(2, sl3_twisted.index) == (1, 0, 0, 1)


def test_suku_terendah_adalah_penggerak(sl3_twisted):
    pair = find_admissible_pairs(sl3_twisted)[0]
    R = build_R(sl3_twisted, 2)
    D = deform_R(R, pair, 1)
    a = D.algebra
    K = a.cartan(pair.K_cartan)
    X = tensor_of([K * a.e(1), K * a.f(2)], PAIR_SIGNS, D.K)
    assert D.lowest() == X
    assert list(D.components())[0] == (-1, -1)


def test_yang_baxter_orde_satu(sl3_twisted):
    pair = find_admissible_pairs(sl3_twisted)[0]
    R = build_R(sl3_twisted, 2)
    D = deform_R(R, pair, 1)
    report = verify_first_order_yb(R, D, 1)
    assert report.passed
    assert report.checked[0] == (-1, -1)


def test_koefisien_nol(sl3_twisted):
    pair = find_admissible_pairs(sl3_twisted)[0]
    R = build_R(sl3_twisted, 2)
    D = deform_R(R, pair, 1, coeff=0)
    assert not D.series
    assert verify_first_order_yb(R, D, 1).passed


def test_pasangan_dipaksa_gagal(generic2):
    R = build_R(generic2, 2)
    pair = make_pair(generic2, 1, 2)
    with pytest.raises(PreconditionError):
        deform_R(R, pair, 1)
    D = deform_R(R, pair, 1, force=True)
    assert D.forced
    report = verify_first_order_yb(R, D, 1)
    assert not report.passed
    assert "pasangan tidak admissible dipaksa" in report.notes


def test_truncation_kurang(sl3_twisted):
    pair = find_admissible_pairs(sl3_twisted)[0]
    R = build_R(sl3_twisted, 2)
    with pytest.raises(PreconditionError):
        deform_R(R, pair, 2)
    D = deform_R(R, pair, 1)
    with pytest.raises(PreconditionError):
        verify_first_order_yb(R, D, 2)


def test_kombinasi_linear(sl3_twisted):
    pair = find_admissible_pairs(sl3_twisted)[0]
    R = build_R(sl3_twisted, 2)
    single = deform_R(R, pair, 1)
    double = combine_deformations(R, [(pair, 1), (pair, 1)], 1)
    assert double.series == single.series.scale(2)


def test_tipe_ditolak_generik(generic2):
    for kind in REJECTED_KINDS:
        assert not check_rejected_types(generic2, kind, 1, 2).feasible


def test_minus_plus_layak():
    spec = spec_from_dict({
        "generators": [1, 2],
        "qmatrix": {"1,1": "-1", "1,2": "-1", "2,1": "-1", "2,2": "-1"},
    })
    report = check_rejected_types(spec, "minus-plus", 1, 2)
    assert report.feasible
    assert report.violated == []


def test_plus_plus_gagal_di_grade_nol_satu():
    spec = spec_from_dict({
        "generators": [1, 2],
        "qmatrix": {"1,1": "symbolic", "2,1": "q[1,1]^-1", "1,2": "symbolic", "2,2": "q[1,2]^-1"},
    })
    report = check_rejected_types(spec, "plus-plus", 1, 2)
    assert not report.feasible
    assert {c.name for c in report.violated} == {"grade-0-1"}
    assert report.to_dict()["conditions"][0]["expression"] == "q[1,1]*q[2,1]"


def test_jenis_tak_dikenal(generic2):
    with pytest.raises(PreconditionError):
        check_rejected_types(generic2, "plus-minus", 1, 2)


@pytest.mark.slow
def test_yang_baxter_orde_satu_kuosien(sl3_twisted):
    pair = find_admissible_pairs(sl3_twisted)[0]
    ideal = build_ideal(sl3_twisted, 3)
    R = build_R(sl3_twisted, 3, ideal)
    D = deform_R(R, pair, 2)
    assert verify_first_order_yb(R, D, 2).passed
