import pytest

from freealg import FreeElement, POSITIVE, NEGATIVE
from qdiff import (
    DerivativeKind, derivative, find_constants, constants_determinant, qserre_relation,
    cartan_matrix, phi_operator_check, is_c_closed, derivatives_commute,
    determinant_factor_report, is_constant,
)
import linalg
import scalars
from specfile import parse_spec, spec_from_dict
from errors import SideMismatchError, NotConstantError, PreconditionError, GradeMismatchError


def test_turunan_section3(generic2):
    field = generic2.field
    kind = DerivativeKind.of("section3", generic2)
    x = generic2.element(POSITIVE, (1, 2))
    assert derivative(kind, 1, x) == generic2.element(POSITIVE, (2,))
    assert derivative(kind, 2, x) == generic2.element(POSITIVE, (1,), generic2.q(2, 1))
    assert not derivative(kind, 1, FreeElement.one(POSITIVE, field))


def test_turunan_sisi_salah(generic2):
    kind = DerivativeKind.of("left_minus", generic2)
    with pytest.raises(SideMismatchError):
        derivative(kind, 1, generic2.element(NEGATIVE, (1,)))


def test_determinan_grade_dua(generic2):
    det = constants_determinant((1, 1), generic2)
    assert det == 1 - generic2.sigma(1, 2)
    assert not find_constants("section3", (1, 1), generic2).basis


def test_konstanta_minus_one(minus_one):
    report = find_constants("left_minus", (2,), minus_one)
    assert report.basis == [minus_one.element(POSITIVE, (1, 1))]
    assert report.dim == 1


def test_konstanta_di_lokus_sigma():
    spec = parse_spec("preset:sigma-one")
    report = find_constants("section3", (1, 1), spec)
    assert report.dim == 1
    assert not report.determinant


def test_relasi_serre_generik(generic2):
    relation = qserre_relation(1, 2, 1, generic2)
    expected = generic2.element(POSITIVE, (2, 1)) - generic2.element(POSITIVE, (1, 2), generic2.q(1, 2))
    assert relation.element == expected
    assert not relation.constant


def test_matriks_cartan_sl3(sl3):
    assert cartan_matrix(sl3, 6) == [[2, -1], [-1, 2]]
    relation = qserre_relation(1, 2, 2, sl3)
    assert relation.constant
    assert cartan_matrix(parse_spec("preset:generic-2"), 4) == [[2, None], [None, 2]]


def test_relasi_serre_prasyarat(generic2):
    with pytest.raises(PreconditionError):
        qserre_relation(1, 1, 1, generic2)


def test_operator_phi(minus_one):
    C = minus_one.element(POSITIVE, (1, 1))
    assert phi_operator_check(C, 4, minus_one)
    with pytest.raises(NotConstantError):
        phi_operator_check(minus_one.element(POSITIVE, (1,)), 2, minus_one)


def test_c_closed(minus_one):
    C = minus_one.element(POSITIVE, (1, 1))
    Y = {1: minus_one.element(POSITIVE, (1,))}
    # d_C Y = C^{11} d_1 Y_1 = d_1 e1 = 1
    assert not is_c_closed(C, Y, minus_one)
    assert is_c_closed(C, {1: FreeElement.zero(POSITIVE, minus_one.field)}, minus_one)
    with pytest.raises(GradeMismatchError):
        is_c_closed(C, {1: minus_one.element(POSITIVE, (1,)) + minus_one.element(POSITIVE, (1, 1))}, minus_one)


def test_turunan_kiri_kanan_komutatif(generic2):
    assert derivatives_commute(generic2, 3)


def test_struktur_faktor_determinan():
    spec = parse_spec("preset:generic-4")
    report = determinant_factor_report(spec, 11)
    assert report.generic_nonzero
    assert all(vanishes for _, vanishes in report.loci)
    assert len(report.loci) == 6 + 4 + 1
    with pytest.raises(PreconditionError):
        determinant_factor_report(parse_spec("preset:generic-2"), 11)


# --- Katalog konstanta di lokus khusus ---


def _spesialisasi(generators, mapping=None, qmatrix=None):
    data = {"generators": list(generators)}
    if mapping:
        data["specializations"] = [{"map": mapping}]
    if qmatrix:
        data["qmatrix"] = qmatrix
    return spec_from_dict(data)


def _di_span(report, C, spec):
    words = spec.words(report.multidegree)
    rows = [[x.coefficient(w) for w in words] for x in report.basis]
    extended = rows + [[C.coefficient(w) for w in words]]
    return linalg.rank(extended, len(words), spec.field) == len(rows)


def _e(spec, *terms):
    total = FreeElement.zero(POSITIVE, spec.field)
    for coeff, word in terms:
        total = total + spec.element(POSITIVE, word, coeff)
    return total


def test_determinan_grade_tiga(generic2):
    q11, sigma = generic2.q(1, 1), generic2.sigma(1, 2)
    one = generic2.field.one
    det_112 = constants_determinant((2, 1), generic2)
    assert scalars.unit_equivalent(det_112, (one + q11) * (one - sigma) * (one - q11 * sigma))
    det_111 = constants_determinant((3, 0), generic2)
    assert scalars.unit_equivalent(det_111, one + q11 + q11 ** 2)
    spec3 = parse_spec("preset:generic-3")
    s12, s13, s23 = spec3.sigma(1, 2), spec3.sigma(1, 3), spec3.sigma(2, 3)
    one = spec3.field.one
    expected = (one - s12) * (one - s13) * (one - s23) * (one - s12 * s13 * s23)
    assert scalars.unit_equivalent(constants_determinant((1, 1, 1), spec3), expected)


def test_konstanta_sigma_satu_bentuk_persis():
    spec = parse_spec("preset:sigma-one")
    report = find_constants("section3", (1, 1), spec)
    assert report.basis == [_e(spec, (spec.field.one, (1, 2)), (-spec.q(2, 1), (2, 1)))]


def test_konstanta_akar_pangkat_tiga():
    spec = parse_spec("preset:cube-root")
    report = find_constants("section3", (3,), spec)
    assert report.basis == [spec.element(POSITIVE, (1, 1, 1))]
    assert phi_operator_check(report.basis[0], 4, spec)


def test_konstanta_112_di_q11_minus_satu():
    spec = _spesialisasi((1, 2), qmatrix={"1,1": "-1"})
    report = find_constants("section3", (2, 1), spec)
    C = _e(spec, (spec.field.one, (1, 1, 2)), (-spec.q(2, 1) ** 2, (2, 1, 1)))
    assert report.dim == 1
    assert _di_span(report, C, spec)


def test_konstanta_112_di_lokus_q11_sigma():
    spec = _spesialisasi((1, 2), {"q[2,1]": "q[1,1]^-1*q[1,2]^-1"})
    one = spec.field.one
    q12, q21, sigma = spec.q(1, 2), spec.q(2, 1), spec.sigma(1, 2)
    assert q21 == (spec.q(1, 1) * q12) ** -1
    report = find_constants("section3", (2, 1), spec)
    C = _e(spec, (q12, (1, 1, 2)), (-(one + sigma), (1, 2, 1)), (q21, (2, 1, 1)))
    assert report.dim == 1
    assert _di_span(report, C, spec)
    # relasi q-Serre k = 2 adalah konstanta yang sama
    relation = qserre_relation(1, 2, 2, spec)
    assert relation.constant
    assert _di_span(report, relation.element, spec)


def test_konstanta_112_di_sigma_satu():
    spec = parse_spec("preset:sigma-one")
    one = spec.field.one
    q11, q12, q21 = spec.q(1, 1), spec.q(1, 2), spec.q(2, 1)
    report = find_constants("section3", (2, 1), spec)
    C = _e(spec, (q11 * q12, (1, 1, 2)), (-(one + q11), (1, 2, 1)), (q21, (2, 1, 1)))
    assert report.dim == 1
    assert _di_span(report, C, spec)
    # tanpa faktor q21 pada suku tengah, elemen ini bukan konstanta
    other = _e(spec, (q11, (1, 1, 2)), (-(one + q11), (1, 2, 1)), (q21 ** 2, (2, 1, 1)))
    assert not _di_span(report, other, spec)


def test_konstanta_tiga_generator_sigma12_satu():
    spec = _spesialisasi((1, 2, 3), {"q[2,1]": "q[1,2]^-1"})
    inner = _e(spec, (spec.field.one, (1, 2)), (-spec.q(2, 1), (2, 1)))
    e3 = spec.element(POSITIVE, (3,))
    C = inner * e3 - (e3 * inner).scale(spec.q(3, 1) * spec.q(3, 2))
    report = find_constants("section3", (1, 1, 1), spec)
    assert report.dim == 1
    assert _di_span(report, C, spec)
    assert find_constants("section3", (2, 1, 0), spec).dim == 1


def test_konstanta_siklik_tiga_huruf():
    spec = _spesialisasi(
        (1, 2, 3), {"q[3,2]": "q[1,2]^-1*q[2,1]^-1*q[1,3]^-1*q[3,1]^-1*q[2,3]^-1"},
    )
    assert spec.sigma(1, 2) * spec.sigma(1, 3) * spec.sigma(2, 3) == spec.field.one
    q = spec.q
    C = FreeElement.zero(POSITIVE, spec.field)
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        factor = q(c, a) ** -1 - q(a, c)
        C = C + _e(spec, (factor, (a, b, c)), (factor * q(c, a) * q(c, b) * q(b, a), (c, b, a)))
    report = find_constants("section3", (1, 1, 1), spec)
    assert report.dim == 1
    assert _di_span(report, C, spec)
    assert phi_operator_check(report.basis[0], 4, spec)


def test_phi_pada_semua_konstanta_katalog():
    specs = [
        (parse_spec("preset:sigma-one"), [(1, 1), (2, 1)]),
        (parse_spec("preset:minus-one"), [(2,)]),
        (_spesialisasi((1, 2), qmatrix={"1,1": "-1"}), [(2, 0), (2, 1)]),
        (_spesialisasi((1, 2), {"q[2,1]": "q[1,1]^-1*q[1,2]^-1"}), [(2, 1)]),
    ]
    for spec, degrees in specs:
        for d in degrees:
            report = find_constants("section3", d, spec)
            assert report.basis
            for C in report.basis:
                assert phi_operator_check(C, 4, spec)


def test_dx_selalu_c_closed():
    spec = parse_spec("preset:sigma-one")
    kind = DerivativeKind.of("section3", spec)
    C = find_constants(kind, (1, 1), spec).basis[0]
    for word in ((1, 2), (2, 1), (1, 1), (2, 2)):
        X = spec.element(POSITIVE, word)
        Y = {i: derivative(kind, i, X) for i in spec.generators}
        assert is_c_closed(C, Y, spec)


# --- Koefisien q-Serre ---


def test_koefisien_serre_k_dua_dan_tiga(generic2):
    q, q12 = generic2.q(1, 1), generic2.q(1, 2)
    one = generic2.field.one
    relation = qserre_relation(1, 2, 2, generic2)
    assert relation.coefficients == [one, -q12 * (one + q), q12 ** 2 * q]
    relation = qserre_relation(1, 2, 3, generic2)
    q3 = one + q + q ** 2
    assert relation.coefficients == [one, -q12 * q3, q12 ** 2 * q * q3, -(q12 ** 3) * q ** 3]
    assert relation.element.coefficient((1, 2, 1, 1)) == -q12 * q3


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_koefisien_serre_umum(generic2, k):
    q, q12 = generic2.q(1, 1), generic2.q(1, 2)
    relation = qserre_relation(1, 2, k, generic2)
    for m, coeff in enumerate(relation.coefficients):
        assert coeff == (-q12) ** m * q ** (m * (m - 1) // 2) * scalars.q_binomial(k, m, q)
    assert not relation.constant


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_flag_serre_sesuai_turunan(sl3, k):
    kind = DerivativeKind.of("section3", sl3)
    relation = qserre_relation(1, 2, k, sl3)
    assert relation.constant == (k >= 2)
    assert is_constant(kind, relation.element, sl3.generators) == relation.constant
