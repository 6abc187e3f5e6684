# rmatrix.py

import logging
from dataclasses import dataclass, field as dc_field

import scalars
import linalg
from algebra import Algebra, TensorElement
from freealg import FreeElement, POSITIVE, NEGATIVE, compositions, sub_degrees
from qdiff import DerivativeKind, derivative, derivative_matrix, find_constants, is_c_closed
from errors import ObstructionDetected, PreconditionError
from worker import run_blocks

log = logging.getLogger("RMATRIX")

UNIQUE = "unique"
UNIQUE_MODULO_QUOTIENT = "unique-modulo-quotient"


# --- Tabel Koefisien t ---


@dataclass
class TCoefficients:
    """
    t_(a) per kata bawah (a): elemen A+ dengan multidegree sama. Untuk kuosien,
    kata bawah dan kata atas adalah kata basis (non-pivot) dari A-/I dan A+/I.
    """

    spec: object
    K: int
    table: dict
    provenance: dict
    ideal: object = None
    direction: str = "left"

    def t(self, lower):
        lower = tuple(lower)
        if lower in self.table:
            return self.table[lower]
        return FreeElement.zero(POSITIVE, self.spec.field)

    def coefficient(self, lower, upper):
        return self.t(lower).coefficient(upper)

    def lower_words(self, grade=None):
        words = [w for w in self.table if grade is None or len(w) == grade]
        return sorted(words, key=lambda w: (len(w), w))

    def rows(self):
        """Baris (kata bawah, kata atas, koefisien) terurut."""
        out = []
        for lower in self.lower_words():
            for upper, coeff in self.table[lower].items():
                out.append((lower, upper, coeff))
        return out

    def same_as(self, other):
        words = set(self.table) | set(other.table)
        return all(self.t(w) == other.t(w) for w in words)


def basis_words(spec, ideal, side, d):
    if ideal is None:
        return spec.words(d)
    return ideal.basis_words(side, d)


def grade_words(spec, ideal, side, grade):
    """Kata basis semua multidegree dengan total grade tertentu."""
    words = []
    for d in compositions(grade, spec.rank):
        words.extend(basis_words(spec, ideal, side, d))
    return words


def _reduce(ideal, x):
    return x if ideal is None else ideal.reduce(x)


def _has_quotient(ideal, spec, grade):
    if ideal is None or not ideal:
        return False
    for g in range(2, grade + 1):
        for d in compositions(g, spec.rank):
            if ideal.dimension(POSITIVE, d) or ideal.dimension(NEGATIVE, d):
                return True
    return False


def _seed_table(spec, K):
    field = spec.field
    table = {(): FreeElement.one(POSITIVE, field)}
    if K >= 1:
        for alpha in spec.generators:
            table[(alpha,)] = FreeElement.word(POSITIVE, field, (alpha,))
    return table


def _images(spec, ideal, table, d, direction):
    """
    Untuk setiap gamma di d: pasangan (reduce(e_-gamma e_-v), t_v) atas kata basis v
    di d - e_gamma (kiri), atau dengan e_-v e_-gamma (kanan).
    """
    field = spec.field
    images = {}
    for index, gamma in enumerate(spec.generators):
        if d[index] == 0:
            continue
        lower = sub_degrees(d, spec.unit(gamma))
        pairs = []
        for v in basis_words(spec, ideal, NEGATIVE, lower):
            t_v = table.get(v)
            if not t_v:
                continue
            word = (gamma,) + v if direction == "left" else v + (gamma,)
            pairs.append((_reduce(ideal, FreeElement.word(NEGATIVE, field, word)), t_v))
        images[gamma] = (lower, pairs)
    return images


def _rhs_element(pairs, u, field):
    """Y_gamma untuk kata atas u: sum_v coef_u(bayangan_v) t_v."""
    total = FreeElement.zero(POSITIVE, field)
    for image, t_v in pairs:
        coeff = image.coefficient(u)
        if coeff:
            total = total + t_v.scale(coeff)
    return total


def _solve_block(spec, ideal, table, d, direction, grade):
    kind = DerivativeKind.of("left_minus" if direction == "left" else "right_minus", spec)
    rows, columns, labels = derivative_matrix(kind, d, spec, ideal)
    uppers = basis_words(spec, ideal, NEGATIVE, d)
    if not uppers:
        return {}
    field = spec.field
    images = _images(spec, ideal, table, d, direction)
    rhs, targets = [], {}
    for u in uppers:
        column, Y = [], {}
        for gamma, (lower, pairs) in images.items():
            Y[gamma] = _rhs_element(pairs, u, field)
            column.extend(Y[gamma].coefficient(w) for w in basis_words(spec, ideal, POSITIVE, lower))
        rhs.append(column)
        targets[u] = Y
    if ideal is not None:
        unclosed = _unclosed_generators(spec, ideal, kind, d, columns, targets)
        if unclosed:
            log.warning("Ruas kanan di multidegree %s tidak C-closed untuk %d generator ideal", d, len(unclosed))
            raise ObstructionDetected(grade, d, unclosed, True)
    result = linalg.solve_many(rows, len(columns), rhs, field)
    if not result.unique:
        constants = find_constants(kind, d, spec, ideal).basis
        inconsistent = not result.consistent
        log.warning(
            "Obstruksi di grade %d multidegree %s (%s)", grade, d,
            "tidak konsisten" if inconsistent else "tidak unik",
        )
        raise ObstructionDetected(grade, d, constants, inconsistent)
    solved = {}
    for u, solution in zip(uppers, result.solutions):
        solved[u] = FreeElement(POSITIVE, field, {columns[c]: x for c, x in enumerate(solution)})
    return solved


def _unclosed_generators(spec, ideal, kind, d, columns, targets):
    """
    Generator ideal di multidegree d yang membuat ruas kanan tidak C-closed.
    Hanya generator yang d_C-nya menghapus bayangan semua kolom (d X tereduksi)
    yang dipakai; untuk generator seperti itu d_C Y != 0 berarti sistem tak punya solusi.
    """
    candidates = [C for C in ideal.generators_on(POSITIVE) if spec.multidegree(next(iter(C.terms))) == d]
    if not candidates:
        return []
    field = spec.field
    images = []
    for word in columns:
        x = FreeElement.word(POSITIVE, field, word)
        images.append({
            gamma: ideal.reduce(derivative(kind, gamma, x))
            for index, gamma in enumerate(spec.generators) if d[index]
        })
    unclosed = []
    for C in candidates:
        if not all(is_c_closed(C, image, spec, kind) for image in images):
            log.debug("Generator %s dilewati: d_C tidak nol pada bayangan kolom", C.render())
            continue
        if not all(is_c_closed(C, Y, spec, kind) for Y in targets.values()):
            unclosed.append(C)
    return unclosed


def _solve(spec, K, ideal, direction, jobs):
    if K < 1:
        raise PreconditionError(f"solve_t: K harus >= 1, diterima {K}")
    table = _seed_table(spec, K)
    provenance = {0: UNIQUE}
    if K >= 1:
        provenance[1] = UNIQUE
    for grade in range(2, K + 1):
        degrees = compositions(grade, spec.rank)
        current = dict(table)
        blocks = run_blocks(
            lambda d: _solve_block(spec, ideal, current, d, direction, grade),
            degrees, jobs, label=f"grade-{grade}",
        )
        for solved in blocks:
            table.update(solved)
        provenance[grade] = UNIQUE_MODULO_QUOTIENT if _has_quotient(ideal, spec, grade) else UNIQUE
        log.info("Grade %d selesai (%s), %d kata bawah", grade, provenance[grade],
                 sum(len(b) for b in blocks))
    return TCoefficients(spec, K, table, provenance, ideal, direction)


def solve_t(spec, K, ideal=None, jobs=1):
    """Rekursi kiri: d_{-gamma} t_(a) = delta t_(a2..al), grade demi grade."""
    return _solve(spec, K, ideal, "left", jobs)


def solve_t_right(spec, K, ideal=None, jobs=1):
    """Rekursi kanan: t_(a) d_{-gamma} = t_(a1..a(l-1)) delta."""
    return _solve(spec, K, ideal, "right", jobs)


# --- Oracle: Sistem Penuh ---


def oracle_solve(spec, K, ideal=None):
    """
    Untuk setiap multidegree, semua koefisien t^{w}_{u} dijadikan satu sistem
    linear besar dan diselesaikan dengan eliminasi naif.
    """
    field = spec.field
    kind = DerivativeKind.of("left_minus", spec)
    table = _seed_table(spec, K)
    for grade in range(2, K + 1):
        current = dict(table)
        for d in compositions(grade, spec.rank):
            uppers = basis_words(spec, ideal, NEGATIVE, d)
            columns = basis_words(spec, ideal, POSITIVE, d)
            if not uppers:
                continue
            nunknown = len(uppers) * len(columns)
            images = _images(spec, ideal, current, d, "left")
            rows, rhs = [], []
            for ui, u in enumerate(uppers):
                for gamma, (lower, pairs) in images.items():
                    lower_words = basis_words(spec, ideal, POSITIVE, lower)
                    block = [[field.zero] * nunknown for _ in lower_words]
                    position = {w: r for r, w in enumerate(lower_words)}
                    for ci, w in enumerate(columns):
                        image = _reduce(ideal, derivative(kind, gamma, FreeElement.word(POSITIVE, field, w)))
                        for word, coeff in image.terms.items():
                            block[position[word]][ui * len(columns) + ci] += coeff
                    rows.extend(block)
                    Y = _rhs_element(pairs, u, field)
                    rhs.extend(Y.coefficient(w) for w in lower_words)
            result = linalg.naive_solve(rows, nunknown, [rhs], field)
            solution = result.solutions[0]
            if solution is None or result.nullity:
                raise ObstructionDetected(grade, d, find_constants(kind, d, spec, ideal).basis,
                                          solution is None)
            for ui, u in enumerate(uppers):
                chunk = solution[ui * len(columns):(ui + 1) * len(columns)]
                table[u] = FreeElement(POSITIVE, field, {columns[c]: x for c, x in enumerate(chunk)})
    provenance = {g: "oracle" for g in range(K + 1)}
    return TCoefficients(spec, K, table, provenance, ideal, "oracle")


# --- Tabel Cermin ---


def mirror_t(t):
    """t^(g) = sum_u t^(g)_(u) e_{-u}: tabel sisi negatif dengan koefisien yang sama."""
    field = t.spec.field
    collected = {}
    for lower, upper, coeff in t.rows():
        collected.setdefault(upper, {})[lower] = coeff
    return {upper: FreeElement(NEGATIVE, field, terms) for upper, terms in collected.items()}


def check_mirror(t, mirror=None):
    """
    Rekursi sisi plus: d_a t^(g) = delta t^(g2..) (turunan kiri) dan
    t^(g) d_a = t^(..g(n-1)) delta (turunan kanan). Hanya untuk aljabar bebas.
    """
    if t.ideal is not None and t.ideal:
        raise PreconditionError("check_mirror hanya untuk aljabar bebas")
    spec = t.spec
    mirror = mirror if mirror is not None else mirror_t(t)
    left = DerivativeKind.of("left_plus", spec)
    right = DerivativeKind.of("right_plus", spec)
    zero = FreeElement.zero(NEGATIVE, spec.field)
    for upper, element in mirror.items():
        if not upper:
            continue
        for alpha in spec.generators:
            expected_left = mirror.get(upper[1:], zero) if upper[0] == alpha else zero
            if derivative(left, alpha, element) != expected_left:
                log.warning("Rekursi kiri cermin gagal pada t^%s", upper)
                return False
            expected_right = mirror.get(upper[:-1], zero) if upper[-1] == alpha else zero
            if derivative(right, alpha, element) != expected_right:
                log.warning("Rekursi kanan cermin gagal pada t^%s", upper)
                return False
    return True


# --- Matriks R ---


@dataclass
class RMatrix:
    """R = R0 * series; series = sum_k sum_u e_{-u} ⊗ t_u sampai grade K."""

    spec: object
    K: int
    t: TCoefficients
    series: TensorElement
    algebra: Algebra
    ideal: object = None
    r0_prefixed: bool = True
    perturbations: list = dc_field(default_factory=list)

    def rows(self):
        return self.t.rows()

    def to_dict(self):
        return {
            "K": self.K,
            "spec": self.spec.describe(),
            "provenance": {str(g): p for g, p in sorted(self.t.provenance.items())},
            "r0_prefixed": self.r0_prefixed,
            "ideal": None if self.ideal is None else self.ideal.to_dict(),
            "table": [
                {"lower": list(lower), "upper": list(upper), "coeff": scalars.render(coeff)}
                for lower, upper, coeff in self.rows() if lower
            ],
        }


def series_of(t, K, algebra):
    zero_c = algebra.zero_cartan
    terms = {}
    for lower, upper, coeff in t.rows():
        if len(lower) > K:
            continue
        terms[((lower, zero_c, ()), ((), zero_c, upper))] = coeff
    return TensorElement(algebra, 2, terms, (-1, 1), K)


def assemble_R(t, K, algebra=None):
    """Bagian grade-k: sum_(a) e_{-a1..-ak} ⊗ t_(a), dengan prefiks R0."""
    if K > t.K:
        raise PreconditionError(f"assemble_R: tabel t hanya sampai grade {t.K}, diminta {K}")
    algebra = algebra or Algebra(t.spec, t.ideal)
    series = series_of(t, K, algebra)
    log.info("R dirakit sampai grade %d: %d suku", K, len(series.terms))
    return RMatrix(t.spec, K, t, series, algebra, t.ideal)


def with_algebra(R, algebra):
    """R yang sama di atas objek Algebra lain (misalnya dengan relasi Cartan)."""
    series = TensorElement(algebra, 2, R.series.terms, R.series.signs, R.series.bound)
    return RMatrix(R.spec, R.K, R.t, series, algebra, R.ideal, R.r0_prefixed, list(R.perturbations))


def perturb(R, lower, upper, delta):
    """Salin R dengan t^(upper)_(lower) ditambah delta (injeksi kesalahan)."""
    lower, upper = tuple(lower), tuple(upper)
    if len(lower) != len(upper) or len(lower) > R.K:
        raise PreconditionError("perturb: kata bawah/atas tidak cocok dengan R")
    field = R.spec.field
    delta = field(delta)
    table = dict(R.t.table)
    table[lower] = R.t.t(lower) + FreeElement.word(POSITIVE, field, upper, delta)
    t = TCoefficients(R.spec, R.t.K, table, dict(R.t.provenance), R.t.ideal, R.t.direction)
    series = series_of(t, R.K, R.algebra)
    perturbed = RMatrix(R.spec, R.K, t, series, R.algebra, R.ideal, R.r0_prefixed, list(R.perturbations))
    perturbed.perturbations.append((lower, upper, scalars.render(delta)))
    log.info("Perturbasi t^%s_%s += %s", upper, lower, scalars.render(delta))
    return perturbed


def build_R(spec, K, ideal=None, jobs=1):
    return assemble_R(solve_t(spec, K, ideal, jobs), K)
