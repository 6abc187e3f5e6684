# linalg.py

import logging
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

log = logging.getLogger("LINALG")

# --- Eliminasi Eksak di Field Scalar ---
# Semua baris adalah list elemen field (FracElement). Matriks kosong ditangani
# di sini supaya pemanggil tidak perlu kasus khusus.


def _matrix(rows, ncols, field):
    return DomainMatrix([list(row) for row in rows], (len(rows), ncols), field.to_domain())


def rref(rows, ncols, field):
    """RREF Gauss-Jordan; pivot bernilai 1. Mengembalikan (baris tereduksi, pivot)."""
    if not rows or ncols == 0:
        return [list(row) for row in rows], ()
    reduced, pivots = _matrix(rows, ncols, field).rref(method="GJ")
    return reduced.to_list(), tuple(pivots)


def rank(rows, ncols, field):
    return len(rref(rows, ncols, field)[1])


def nullspace_basis(rows, ncols, field):
    """
    Basis ruang nol dalam bentuk RREF: setiap vektor punya koordinat pivot
    (yang pertama tak nol) bernilai 1, urutan pivot leksikografis.
    """
    reduced, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    vectors = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [field.zero] * ncols
        vector[free] = field.one
        for row, pivot in enumerate(pivots):
            vector[pivot] = -reduced[row][free]
        vectors.append(vector)
    if not vectors:
        return []
    normalized, _ = rref(vectors, ncols, field)
    return [row for row in normalized if any(row)]


def row_space_basis(rows, ncols, field):
    reduced, pivots = rref(rows, ncols, field)
    return reduced[: len(pivots)], pivots


def determinant(rows, field):
    n = len(rows)
    if n == 0:
        return field.one
    return _matrix(rows, n, field).det()


@dataclass
class SolveResult:
    """Solusi partikular per ruas kanan (None jika tidak konsisten) dan nullity matriks."""

    solutions: list
    nullity: int
    pivots: tuple

    @property
    def consistent(self):
        return all(solution is not None for solution in self.solutions)

    @property
    def unique(self):
        return self.consistent and self.nullity == 0


def solve_many(rows, ncols, rhs, field):
    """
    Menyelesaikan A x = b untuk banyak ruas kanan sekaligus lewat RREF matriks
    teraugmentasi. Variabel bebas diberi nilai 0.
    """
    nrows = len(rows)
    for column in rhs:
        if len(column) != nrows:
            raise ValueError(f"ruas kanan panjang {len(column)}, matriks punya {nrows} baris")
    if nrows == 0:
        return SolveResult([[field.zero] * ncols for _ in rhs], ncols, ())
    augmented = [list(rows[i]) + [column[i] for column in rhs] for i in range(nrows)]
    reduced, pivots = rref(augmented, ncols + len(rhs), field)
    a_pivots = tuple(p for p in pivots if p < ncols)
    rank_a = len(a_pivots)
    if len(rhs) > 1 and len(pivots) > rank_a:
        # pivot di kolom ruas kanan merusak kolom sesudahnya; ulang satu per satu
        parts = [solve_many(rows, ncols, [column], field) for column in rhs]
        return SolveResult([p.solutions[0] for p in parts], ncols - rank_a, a_pivots)
    solutions = []
    for j in range(len(rhs)):
        col = ncols + j
        if any(reduced[r][col] for r in range(rank_a, nrows)):
            solutions.append(None)
            continue
        x = [field.zero] * ncols
        for r, pivot in enumerate(a_pivots):
            x[pivot] = reduced[r][col]
        solutions.append(x)
    return SolveResult(solutions, ncols - rank_a, a_pivots)


# --- Oracle: Eliminasi Naif ---


def naive_solve(rows, ncols, rhs, field):
    """
    Eliminasi Gauss maju lalu substitusi balik, ditulis ulang tanpa DomainMatrix.
    Dipakai sebagai pembanding independen untuk solver rekursi.
    """
    m = [list(row) for row in rows]
    t = [list(column) for column in zip(*rhs)] if rhs else [[] for _ in rows]
    nrows = len(m)
    free_vars = []
    piv_r = 0
    for piv_c in range(ncols):
        found = None
        for i in range(piv_r, nrows):
            if m[i][piv_c]:
                found = i
                break
        if found is None:
            free_vars.append(piv_c)
            continue
        if found != piv_r:
            m[piv_r], m[found] = m[found], m[piv_r]
            t[piv_r], t[found] = t[found], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, nrows):
            fr = m[r][piv_c]
            if not fr:
                continue
            frp = fr / fp
            for c in range(piv_c, ncols):
                m[r][c] -= m[piv_r][c] * frp
            t[r] = [a - b * frp for a, b in zip(t[r], t[piv_r])]
        piv_r += 1

    pivot_cols = [c for c in range(ncols) if c not in free_vars]
    solutions = []
    for j in range(len(rhs)):
        if any(t[r][j] for r in range(len(pivot_cols), nrows)):
            solutions.append(None)
            continue
        x = [field.zero] * ncols
        for r in range(len(pivot_cols) - 1, -1, -1):
            c = pivot_cols[r]
            s = -t[r][j]
            for k in range(c + 1, ncols):
                s += m[r][k] * x[k]
            x[c] = -s / m[r][c]
        solutions.append(x)
    return SolveResult(solutions, len(free_vars), tuple(pivot_cols))
