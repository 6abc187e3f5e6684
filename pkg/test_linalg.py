import linalg
from scalars import make_field, gen


def _field():
    return make_field(["q"])


def test_ruang_nol_rref():
    field = _field()
    one = field.one
    basis = linalg.nullspace_basis([[one, one]], 2, field)
    assert basis == [[one, -one]]
    assert linalg.nullspace_basis([[one, field.zero], [field.zero, one]], 2, field) == []


def test_matriks_kosong():
    field = _field()
    basis = linalg.nullspace_basis([], 2, field)
    assert len(basis) == 2
    result = linalg.solve_many([], 2, [[]], field)
    assert result.consistent and result.nullity == 2


def test_solve_many_cocok_dengan_naive():
    field = _field()
    q = gen(field, "q")
    one = field.one
    rows = [[one, q], [q, one]]
    rhs = [[one, field.zero], [q, q ** 2]]
    fast = linalg.solve_many(rows, 2, rhs, field)
    slow = linalg.naive_solve(rows, 2, rhs, field)
    assert fast.unique and slow.unique
    assert fast.solutions == slow.solutions
    x, y = fast.solutions[0]
    assert x + q * y == one and q * x + y == field.zero


def test_sistem_tidak_konsisten():
    field = _field()
    one = field.one
    rows = [[one, one], [one, one]]
    result = linalg.solve_many(rows, 2, [[one, field.zero], [one, one]], field)
    assert result.solutions[0] is None
    assert result.solutions[1] == [one, field.zero]
    assert not result.consistent


def test_determinan():
    field = _field()
    q = gen(field, "q")
    assert linalg.determinant([[field.one, q], [q, field.one]], field) == 1 - q ** 2
    assert linalg.determinant([], field) == field.one
