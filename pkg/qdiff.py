# qdiff.py

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

import scalars
import linalg
from freealg import (
    FreeElement, POSITIVE, NEGATIVE, words_of_grade, sub_degrees, compositions,
)
from errors import (
    SideMismatchError, PreconditionError, NotConstantError, GradeMismatchError,
)
from worker import run_blocks

log = logging.getLogger("QDIFF")

# --- Jenis Turunan ---
# Turunan kiri menghapus huruf ke-p dengan faktor prod_{j<p} f(gamma, a_j),
# turunan kanan dengan prod_{j>p} f(gamma, a_j).
KIND_NAMES = ("section3", "left_minus", "right_minus", "left_plus", "right_plus")

_SIDES = {
    "section3": POSITIVE,
    "left_minus": POSITIVE,
    "right_minus": POSITIVE,
    "left_plus": NEGATIVE,
    "right_plus": NEGATIVE,
}
_DIRECTIONS = {
    "section3": "left",
    "left_minus": "left",
    "right_minus": "right",
    "left_plus": "left",
    "right_plus": "right",
}


@dataclass(frozen=True, eq=False)
class DerivativeKind:
    """Operator turunan q terikat pada matriks q sebuah AlgebraSpec."""

    name: str
    qmatrix: dict
    generators: tuple
    _factors: dict = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise PreconditionError(f"jenis turunan tidak dikenal: {self.name!r}")
        q = self.qmatrix
        factors = {}
        for gamma in self.generators:
            for alpha in self.generators:
                if self.name == "section3":
                    value = q[(gamma, alpha)]
                elif self.name in ("left_minus", "right_plus"):
                    value = q[(gamma, alpha)] ** -1
                else:
                    value = q[(alpha, gamma)] ** -1
                factors[(gamma, alpha)] = value
        object.__setattr__(self, "_factors", factors)

    @classmethod
    def of(cls, name, spec):
        return cls(name, spec.qmatrix, spec.generators)

    @property
    def side(self):
        return _SIDES[self.name]

    @property
    def direction(self):
        return _DIRECTIONS[self.name]

    def factor(self, gamma, alpha):
        return self._factors[(gamma, alpha)]


def _derive_word(kind, gamma, word, one):
    """Pasangan (kata tanpa satu huruf gamma, faktor q) untuk satu kata."""
    out = []
    if kind.direction == "left":
        acc = one
        for p, letter in enumerate(word):
            if letter == gamma:
                out.append((word[:p] + word[p + 1:], acc))
            acc = acc * kind.factor(gamma, letter)
    else:
        acc = one
        for p in range(len(word) - 1, -1, -1):
            letter = word[p]
            if letter == gamma:
                out.append((word[:p] + word[p + 1:], acc))
            acc = acc * kind.factor(gamma, letter)
    return out


def derivative(kind, i, x):
    """Turunan q ke arah generator i; grade turun tepat satu, dan turunan dari 1 adalah 0."""
    if x.side != kind.side:
        raise SideMismatchError(f"turunan {kind.name} bekerja di A{kind.side}, elemen ada di A{x.side}")
    field = x.field
    terms = {}
    for word, coeff in x.terms.items():
        for reduced, factor in _derive_word(kind, i, word, field.one):
            terms[reduced] = terms.get(reduced, field.zero) + coeff * factor
    return FreeElement(x.side, field, terms)


def derivative_chain(kind, indices, x):
    """Operator d_{i1} ... d_{in} diterapkan pada x (d_{in} lebih dulu)."""
    for i in reversed(indices):
        x = derivative(kind, i, x)
        if not x:
            break
    return x


def is_constant(kind, x, generators):
    return all(not derivative(kind, i, x) for i in generators)


# --- Konstanta ---


@dataclass
class ConstantReport:
    multidegree: tuple
    basis: list
    determinant: object
    matrix_dim: int
    kind: str = "section3"

    @property
    def dim(self):
        return len(self.basis)

    def to_dict(self):
        return {
            "multidegree": list(self.multidegree),
            "kind": self.kind,
            "dim": self.dim,
            "matrix_dim": self.matrix_dim,
            "basis": [element.render() for element in self.basis],
            "determinant": None if self.determinant is None else scalars.render(self.determinant),
        }


def _column_words(spec, side, d, ideal):
    if ideal is None:
        return spec.words(d)
    return ideal.basis_words(side, d)


def derivative_matrix(kind, d, spec, ideal=None):
    """
    Matriks sistem {d_gamma X = 0}: baris (gamma, kata basis di d - e_gamma),
    kolom kata basis di d. Dengan ideal, hasil turunan direduksi dulu.
    """
    side = kind.side
    columns = _column_words(spec, side, d, ideal)
    row_labels = []
    rows = []
    field = spec.field
    for index, gamma in enumerate(spec.generators):
        if d[index] == 0:
            continue
        lower = sub_degrees(d, spec.unit(gamma))
        lower_words = _column_words(spec, side, lower, ideal)
        position = {word: r for r, word in enumerate(lower_words)}
        block = [[field.zero] * len(columns) for _ in lower_words]
        for c, word in enumerate(columns):
            image = derivative(kind, gamma, FreeElement.word(side, field, word))
            if ideal is not None:
                image = ideal.reduce(image)
            for reduced, coeff in image.terms.items():
                block[position[reduced]][c] = coeff
        rows.extend(block)
        row_labels.extend((gamma, word) for word in lower_words)
    return rows, columns, row_labels


def find_constants(kind, d, spec, ideal=None):
    """Basis ruang nol (RREF, pivot 1) dari sistem turunan pada multidegree d."""
    d = tuple(d)
    if sum(d) < 1:
        raise PreconditionError("find_constants: |d| harus >= 1")
    if isinstance(kind, str):
        kind = DerivativeKind.of(kind, spec)
    rows, columns, _ = derivative_matrix(kind, d, spec, ideal)
    ncols = len(columns)
    null = linalg.nullspace_basis(rows, ncols, spec.field)
    basis = [
        FreeElement(kind.side, spec.field, {columns[c]: v for c, v in enumerate(vector)})
        for vector in null
    ]
    det = None
    if ideal is None and len(rows) == ncols:
        det = linalg.determinant(rows, spec.field)
    if basis:
        log.info("Konstanta %s di multidegree %s: dimensi %d", kind.name, d, len(basis))
    return ConstantReport(d, basis, det, ncols, kind.name)


def constants_determinant(d, spec, kind="section3"):
    d = tuple(d)
    if sum(d) < 2:
        raise PreconditionError("constants_determinant: |d| harus >= 2")
    if isinstance(kind, str):
        kind = DerivativeKind.of(kind, spec)
    rows, columns, _ = derivative_matrix(kind, d, spec)
    return linalg.determinant(rows, spec.field)


def constants_catalogue(kind, grade, spec, jobs=1, ideal=None):
    """find_constants untuk semua multidegree dengan total grade, paralel per blok."""
    degrees = compositions(grade, spec.rank)
    return run_blocks(lambda d: find_constants(kind, d, spec, ideal), degrees, jobs, label="konstanta")


def mirror_constant(C):
    """C' = sum e_{-a1..-an} C^{an..a1}: pasangan konstanta di sisi lain."""
    return C.mirror()


# --- Relasi q-Serre ---


@dataclass
class SerreRelation:
    alpha: int
    beta: int
    k: int
    element: FreeElement
    coefficients: list
    constant: bool


def qserre_relation(alpha, beta, k, spec):
    """
    C = sum_m Q^k_m e_a^m e_b e_a^(k-m), Q^k_m = (-q_ab)^m q^(m(m-1)/2) [k,m]_q dengan q = q_aa.
    Flag konstan: prod_{m<k} (1 - q^m sigma_ab) = 0.
    """
    if alpha == beta:
        raise PreconditionError("qserre_relation: alpha dan beta harus berbeda")
    if k < 1:
        raise PreconditionError(f"qserre_relation: k harus >= 1, diterima {k}")
    q = spec.q(alpha, alpha)
    one = spec.field.one
    for n in range(1, k + 1):
        if not (q ** n - one):
            raise PreconditionError(
                f"qserre_relation: q[{alpha},{alpha}]^{n} = 1, rumus butuh q^n != 1 untuk n <= {k}"
            )
    q_ab = spec.q(alpha, beta)
    coefficients = []
    terms = {}
    for m in range(k + 1):
        coeff = (-q_ab) ** m * q ** (m * (m - 1) // 2) * scalars.q_binomial(k, m, q)
        coefficients.append(coeff)
        word = (alpha,) * m + (beta,) + (alpha,) * (k - m)
        terms[word] = coeff
    element = FreeElement(POSITIVE, spec.field, terms)
    product = one
    sigma = spec.sigma(alpha, beta)
    for m in range(k):
        product *= one - q ** m * sigma
    return SerreRelation(alpha, beta, k, element, coefficients, not product)


def serre_exponent(alpha, beta, spec, kmax):
    """k terkecil <= kmax dengan q_ab q_ba q_aa^(k-1) = 1, atau None."""
    sigma = spec.sigma(alpha, beta)
    q = spec.q(alpha, alpha)
    for k in range(1, kmax + 1):
        if scalars.same(sigma * q ** (k - 1), spec.field.one):
            return k
    return None


def cartan_matrix(spec, kmax):
    """Matriks Cartan umum A_ab = 1 - k_ab (diagonal 2); None jika k tidak ditemukan."""
    matrix = []
    for alpha in spec.generators:
        row = []
        for beta in spec.generators:
            if alpha == beta:
                row.append(2)
                continue
            k = serre_exponent(alpha, beta, spec, kmax)
            row.append(None if k is None else 1 - k)
        matrix.append(row)
    return matrix


# --- Operator Phi dan C-closedness ---


def _require_constant(kind, C, generators):
    if not C or not is_constant(kind, C, generators):
        raise NotConstantError(f"bukan konstanta untuk turunan {kind.name}: {C.render()}")


def phi_operator_check(C, gmax, spec, kind="section3"):
    """Phi(C) = sum C^{i1..in} d_{i1}...d_{in} menghapus semua kata grade <= gmax."""
    if isinstance(kind, str):
        kind = DerivativeKind.of(kind, spec)
    _require_constant(kind, C, spec.generators)
    field = spec.field
    for grade in range(gmax + 1):
        for word in words_of_grade(grade, spec.generators):
            x = FreeElement.word(kind.side, field, word)
            total = FreeElement.zero(kind.side, field)
            for indices, coeff in C.terms.items():
                total = total + derivative_chain(kind, indices, x).scale(coeff)
            if total:
                log.debug("Phi(C) tidak nol pada kata %s", word)
                return False
    return True


def is_c_closed(C, Y, spec, kind="section3"):
    """d_C Y = sum C^{i1..in} d_{i1}...d_{i(n-1)} Y_{in} = 0."""
    if isinstance(kind, str):
        kind = DerivativeKind.of(kind, spec)
    grades = set()
    for component in Y.values():
        if component:
            grades.update(component.grades())
    if len(grades) > 1:
        raise GradeMismatchError(f"komponen Y punya grade berbeda: {sorted(grades)}")
    field = spec.field
    total = FreeElement.zero(kind.side, field)
    for indices, coeff in C.terms.items():
        component = Y.get(indices[-1])
        if not component:
            continue
        total = total + derivative_chain(kind, indices[:-1], component).scale(coeff)
    return not total


def derivatives_commute(spec, gmax):
    """Turunan kiri dan kanan (sisi minus) saling komutatif pada semua kata grade <= gmax."""
    left = DerivativeKind.of("left_minus", spec)
    right = DerivativeKind.of("right_minus", spec)
    field = spec.field
    for grade in range(gmax + 1):
        for word in words_of_grade(grade, spec.generators):
            x = FreeElement.word(POSITIVE, field, word)
            for gamma in spec.generators:
                for gamma_prime in spec.generators:
                    first = derivative(right, gamma_prime, derivative(left, gamma, x))
                    second = derivative(left, gamma, derivative(right, gamma_prime, x))
                    if first != second:
                        log.warning("Turunan kiri/kanan tidak komutatif pada %s", word)
                        return False
    return True


# --- Struktur Faktor Determinan ---


@dataclass
class FactorReport:
    seed: int
    loci: list
    generic_nonzero: bool

    @property
    def passed(self):
        return self.generic_nonzero and all(vanishes for _, vanishes in self.loci)

    def to_dict(self):
        return {
            "seed": self.seed,
            "generic_nonzero": self.generic_nonzero,
            "loci": [{"locus": label, "vanishes": vanishes} for label, vanishes in self.loci],
            "pass": self.passed,
        }


def _numeric_det(rows, point):
    values = [[scalars.evaluate(entry, point) for entry in row] for row in rows]
    return DomainMatrix(values, (len(values), len(values)), QQ).det()


def determinant_factor_report(spec, seed, kind="section3"):
    """
    Determinan sistem pada empat huruf berbeda, dievaluasi eksak di titik rasional
    acak: harus nol pada setiap lokus sigma_ij = 1, sigma_ij sigma_ik sigma_jk = 1
    dan produk semua sigma = 1, tetapi tidak nol di titik generik.
    """
    gens = spec.generators
    if len(gens) != 4:
        raise PreconditionError("determinant_factor_report butuh tepat 4 generator")
    names = {}
    for a in gens:
        for b in gens:
            name = scalars.symbol_name(a, b)
            if spec.q(a, b) != scalars.gen(spec.field, name):
                raise PreconditionError("determinant_factor_report butuh parameter q simbolik")
            names[(a, b)] = name
    if isinstance(kind, str):
        kind = DerivativeKind.of(kind, spec)
    rows, _, _ = derivative_matrix(kind, (1, 1, 1, 1), spec)
    rng = scalars.make_rng(seed)

    def sigma(point, a, b):
        return point[names[(a, b)]] * point[names[(b, a)]]

    def on_locus(pairs, label):
        point = scalars.random_point(spec.field, rng)
        a, b = pairs[-1]
        rest = QQ.one
        for x, y in pairs[:-1]:
            rest *= sigma(point, x, y)
        point[names[(b, a)]] = QQ.one / (rest * point[names[(a, b)]])
        vanishes = not _numeric_det(rows, point)
        log.info("Lokus %s: determinan %s", label, "nol" if vanishes else "TIDAK nol")
        return label, vanishes

    loci = []
    for a, b in combinations(gens, 2):
        loci.append(on_locus([(a, b)], f"sigma[{a},{b}] = 1"))
    for a, b, c in combinations(gens, 3):
        loci.append(on_locus([(a, b), (a, c), (b, c)], f"sigma[{a},{b}]*sigma[{a},{c}]*sigma[{b},{c}] = 1"))
    all_pairs = list(combinations(gens, 2))
    loci.append(on_locus(all_pairs, "produk semua sigma = 1"))
    generic = scalars.random_point(spec.field, rng)
    generic_nonzero = bool(_numeric_det(rows, generic))
    return FactorReport(seed, loci, generic_nonzero)
