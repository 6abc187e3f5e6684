import pytest

from freealg import (
    FreeElement, POSITIVE, NEGATIVE, words_of_multidegree, compositions, AlgebraSpec,
)
from errors import SideMismatchError, SpecError


def test_kata_per_multidegree():
    assert words_of_multidegree((1, 1), (1, 2)) == [(1, 2), (2, 1)]
    assert words_of_multidegree((2, 0), (1, 2)) == [(1, 1)]
    assert words_of_multidegree((0, 0), (1, 2)) == [()]


def test_komposisi():
    assert compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert compositions(0, 3) == [(0, 0, 0)]


def test_perkalian_dan_cermin(generic2):
    field = generic2.field
    x = FreeElement.word(POSITIVE, field, (1,))
    y = FreeElement.word(POSITIVE, field, (2,))
    xy = x * y
    assert xy.coefficient((1, 2)) == field.one
    mirrored = xy.mirror()
    assert mirrored.side == NEGATIVE
    assert mirrored.coefficient((2, 1)) == field.one


def test_mencampur_sisi_ditolak(generic2):
    field = generic2.field
    plus = FreeElement.word(POSITIVE, field, (1,))
    minus = FreeElement.word(NEGATIVE, field, (1,))
    with pytest.raises(SideMismatchError):
        plus + minus
    with pytest.raises(SideMismatchError):
        plus * minus


def test_komponen_multidegree(generic2):
    field = generic2.field
    x = generic2.element(POSITIVE, (1, 2)) + generic2.element(POSITIVE, (1, 1))
    parts = x.components(generic2.generators)
    assert set(parts) == {(1, 1), (2, 0)}
    assert parts[(1, 1)] + parts[(2, 0)] == x


def test_koefisien_nol_tidak_disimpan(generic2):
    field = generic2.field
    x = generic2.element(POSITIVE, (1,))
    assert not (x - x)
    assert (x - x).terms == {}


def test_validasi_generator_degenerate(minus_one):
    # q11*q11 = 1: degenerate di tingkat pairing, hanya peringatan
    assert minus_one.degenerate_generators() == [1]
    assert minus_one.validate()


def test_generator_tak_dikenal(generic2):
    with pytest.raises(SpecError):
        generic2.index(7)
