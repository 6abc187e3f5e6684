import pytest

from freealg import POSITIVE
from quotient import ObstructionIdeal, build_ideal
from specfile import parse_spec
from rmatrix import (
    solve_t, solve_t_right, oracle_solve, check_mirror, assemble_R, build_R, perturb,
    UNIQUE, UNIQUE_MODULO_QUOTIENT,
)
from errors import ObstructionDetected, PreconditionError


def test_grade_dua_generik(generic2):
    t = solve_t(generic2, 2)
    q12, q21 = generic2.q(1, 2), generic2.q(2, 1)
    x = 1 / (1 - (q12 * q21) ** -1)
    assert t.coefficient((1, 2), (1, 2)) == x
    assert t.coefficient((1, 2), (2, 1)) == -x / q21
    assert t.coefficient((2, 1), (2, 1)) == x
    assert t.coefficient((2, 1), (1, 2)) == -x / q12
    assert t.t((1,)) == generic2.element(POSITIVE, (1,))


def test_satu_generator(generic1):
    t = solve_t(generic1, 2)
    q11 = generic1.q(1, 1)
    assert t.t((1, 1)) == generic1.element(POSITIVE, (1, 1), 1 / (1 + q11 ** -1))


def test_kiri_kanan_dan_oracle_sama(generic2):
    left = solve_t(generic2, 3)
    assert left.same_as(solve_t_right(generic2, 3))
    assert left.same_as(oracle_solve(generic2, 3))
    assert left.provenance == {0: UNIQUE, 1: UNIQUE, 2: UNIQUE, 3: UNIQUE}


def test_paralel_sama_dengan_serial(generic2):
    assert solve_t(generic2, 3, jobs=3).same_as(solve_t(generic2, 3))


def test_rekursi_cermin(generic2):
    assert check_mirror(solve_t(generic2, 3))


def test_obstruksi_minus_one(minus_one):
    with pytest.raises(ObstructionDetected) as info:
        solve_t(minus_one, 2)
    exc = info.value
    assert exc.grade == 2
    assert exc.multidegree == (2,)
    assert exc.inconsistent
    assert exc.constants == [minus_one.element(POSITIVE, (1, 1))]
    assert exc.exit_code == 2


def test_kuosien_minus_one(minus_one):
    ideal = build_ideal(minus_one, 3)
    t = solve_t(minus_one, 3, ideal)
    assert t.lower_words() == [(), (1,)]
    assert t.provenance[2] == UNIQUE_MODULO_QUOTIENT
    with pytest.raises(PreconditionError):
        check_mirror(t)


def test_rakit_r(generic2):
    t = solve_t(generic2, 2)
    R = assemble_R(t, 2)
    assert list(R.series.grade_components()) == [(0, 0), (1, 1), (2, 2)]
    assert R.to_dict()["provenance"] == {"0": UNIQUE, "1": UNIQUE, "2": UNIQUE}
    with pytest.raises(PreconditionError):
        assemble_R(t, 3)


def test_perturbasi(generic2):
    R = build_R(generic2, 2)
    bad = perturb(R, (1,), (1,), 1)
    assert bad.t.coefficient((1,), (1,)) == 2
    assert R.t.coefficient((1,), (1,)) == 1
    assert bad.perturbations == [((1,), (1,), "1")]
    with pytest.raises(PreconditionError):
        perturb(R, (1,), (1, 2), 1)


def test_k_minimal(generic2):
    with pytest.raises(PreconditionError):
        solve_t(generic2, 0)


def test_ruas_kanan_tidak_c_closed(minus_one):
    # ideal hanya di A+, sehingga e_-1 e_-1 tetap ada dan ruas kanannya d_1 e1 = 1
    C = minus_one.element(POSITIVE, (1, 1))
    ideal = ObstructionIdeal(minus_one, [(POSITIVE, C)])
    with pytest.raises(ObstructionDetected) as info:
        solve_t(minus_one, 2, ideal)
    exc = info.value
    assert exc.multidegree == (2,)
    assert exc.inconsistent
    assert exc.constants == [C]


@pytest.mark.parametrize("preset", ["sigma-one", "sl3", "minus-one"])
def test_kuosien_kiri_kanan_oracle_grade_empat(preset):
    spec = parse_spec(f"preset:{preset}")
    ideal = build_ideal(spec, 4)
    left = solve_t(spec, 4, ideal)
    assert left.same_as(solve_t_right(spec, 4, ideal))
    assert left.same_as(oracle_solve(spec, 4, ideal))
