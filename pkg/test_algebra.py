import pytest

from algebra import Algebra, tensor_of, tensor_one, conjugation, weight_of
from quotient import build_ideal
from rmatrix import build_R
from errors import GradeMismatchError


def test_komutator_e_f(algebra2):
    a = algebra2
    bracket = a.e(1) * a.f(1) - a.f(1) * a.e(1)
    assert bracket == a.K(1) - a.Kp(1, -1)
    assert not (a.e(1) * a.f(2) - a.f(2) * a.e(1))


def test_konjugasi_cartan(algebra2, generic2):
    a = algebra2
    assert a.K(1) * a.e(2) * a.K(1, -1) == a.e(2).scale(generic2.q(1, 2))
    assert a.Kp(1) * a.e(2) * a.Kp(1, -1) == a.e(2).scale(generic2.q(2, 1))
    assert a.K(1) * a.f(2) * a.K(1, -1) == a.f(2).scale(generic2.q(1, 2) ** -1)


def test_urutan_normal(algebra2):
    a = algebra2
    x = a.e(1) * a.K(2) * a.f(1)
    for neg, _, pos in x.terms:
        # suku urutan normal: kata negatif di kiri, positif di kanan
        assert isinstance(neg, tuple) and isinstance(pos, tuple)
    assert (a.K(1) * a.K(1, -1)) == a.one()


def test_relasi_cartan(generic2):
    a = Algebra(generic2.with_cartan_relations([(1, 0, 0, 1)]))
    assert a.K(1) * a.Kp(2) == a.one()
    assert a.K(1, -1) == a.Kp(2)


def test_reduksi_kuosien(minus_one):
    a = Algebra(minus_one, build_ideal(minus_one, 3))
    assert not a.reduce(a.e(1) * a.e(1))
    assert not a.reduce(a.f(1) * a.K(1) * a.f(1))


def test_tensor_bound_dan_grade(algebra2):
    a = algebra2
    T = tensor_of([a.f(1) * a.f(2), a.e(1) * a.e(2)], (-1, 1), 1)
    assert not T
    T = tensor_of([a.f(1), a.e(1)], (-1, 1), 2)
    assert list(T.grade_components()) == [(1, 1)]


def test_tensor_rank_berbeda(algebra2):
    with pytest.raises(GradeMismatchError):
        tensor_one(algebra2, 2) + tensor_one(algebra2, 3)


def test_konjugasi_r0(algebra2):
    a = algebra2
    x = tensor_of([a.f(1), a.e(1)], (-1, 1))
    expected = tensor_of([a.f(1) * a.Kp(1, -1), a.K(1) * a.e(1)], (-1, 1))
    assert conjugation(x, 0, 1) == expected


def test_straightening_asosiatif(algebra2):
    a = algebra2
    letters = [a.e(1), a.f(1), a.e(2), a.f(2), a.K(1), a.Kp(2)]
    for x in letters:
        for y in letters:
            for z in (a.e(2) * a.f(1), a.f(2) * a.e(2)):
                assert (x * y) * z == x * (y * z)


def test_r_berbobot_nol(generic2):
    R = build_R(generic2, 3)
    for left, right in R.series.terms:
        assert sorted(left[0]) == sorted(right[2])


def test_bobot_elemen(algebra2):
    a = algebra2
    assert weight_of(a.e(1) * a.K(2) * a.e(2)) == (1, 1)
    assert weight_of(a.f(2)) == (0, -1)
    assert weight_of(a.e(1) * a.f(1)) == (0, 0)
    assert weight_of(a.zero()) == (0, 0)
    assert weight_of(a.e(1) + a.f(1)) is None
