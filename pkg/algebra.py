# algebra.py

import logging
from itertools import product

import scalars
from freealg import FreeElement, POSITIVE, NEGATIVE, render_word
from qdiff import DerivativeKind, derivative
from shared_state import SharedCache
from errors import SpecError, GradeMismatchError

log = logging.getLogger("ALGEBRA")

# --- Urutan Normal ---
# Kunci suku: (kata negatif, vektor Cartan, kata positif). Vektor Cartan
# panjang 2n: eksponen K_a dulu, lalu eksponen K'_a, urut generator.


def _add_vectors(*vectors):
    return tuple(sum(parts) for parts in zip(*vectors))


def _neg_vector(v):
    return tuple(-x for x in v)


class Algebra:
    """
    Aljabar A (atau A/I jika ideal diberikan) dalam urutan normal
    neg x Cartan x pos. Hasil straightening dan karakter Cartan dimemo.
    """

    def __init__(self, spec, ideal=None):
        self.spec = spec
        self.ideal = ideal
        self.field = spec.field
        self.n = spec.rank
        self.zero_cartan = (0,) * (2 * self.n)
        self.left = DerivativeKind.of("left_minus", spec)
        self.right = DerivativeKind.of("right_minus", spec)
        self._relations = self._normalize_relations(spec.relations)
        self._straighten_cache = SharedCache("straighten")
        self._character_cache = SharedCache("karakter")

    # --- Relasi Cartan ---

    def _normalize_relations(self, relations):
        reduced = []
        for vector in relations:
            vector = tuple(vector)
            for pivot, rel in reduced:
                if vector[pivot]:
                    vector = _add_vectors(vector, tuple(-vector[pivot] * x for x in rel))
            nonzero = [i for i, x in enumerate(vector) if x]
            if not nonzero:
                continue
            pivot = nonzero[0]
            if vector[pivot] not in (1, -1):
                raise SpecError(f"relasi Cartan {vector}: pivot harus +-1")
            if vector[pivot] == -1:
                vector = _neg_vector(vector)
            reduced = [
                (p, _add_vectors(rel, tuple(-rel[pivot] * x for x in vector)) if rel[pivot] else rel)
                for p, rel in reduced
            ]
            reduced.append((pivot, vector))
        return reduced

    def normalize_cartan(self, c):
        for pivot, rel in self._relations:
            if c[pivot]:
                c = _add_vectors(c, tuple(-c[pivot] * x for x in rel))
        return c

    # --- Vektor dan Karakter ---

    def k_vector(self, alpha, exp=1):
        v = [0] * (2 * self.n)
        v[self.spec.index(alpha)] = exp
        return tuple(v)

    def kp_vector(self, alpha, exp=1):
        v = [0] * (2 * self.n)
        v[self.n + self.spec.index(alpha)] = exp
        return tuple(v)

    def k_of_weight(self, w, sign=1):
        """K^(sign*w) sebagai vektor Cartan."""
        return tuple(sign * x for x in w) + (0,) * self.n

    def kp_of_weight(self, w, sign=1):
        return (0,) * self.n + tuple(sign * x for x in w)

    def word_weight(self, word, side):
        counts = [0] * self.n
        step = 1 if side == POSITIVE else -1
        for letter in word:
            counts[self.spec.index(letter)] += step
        return tuple(counts)

    def term_weight(self, key):
        neg, _, pos = key
        return _add_vectors(self.word_weight(pos, POSITIVE), self.word_weight(neg, NEGATIVE))

    def character(self, v, w):
        """chi_v(w): K^v x = chi_v(wt x) x K^v."""
        if not any(v) or not any(w):
            return self.field.one
        return self._character_cache.get_or_compute((v, w), lambda: self._character(v, w))

    def _character(self, v, w):
        gens = self.spec.generators
        value = self.field.one
        for a, alpha in enumerate(gens):
            for b, beta in enumerate(gens):
                if not w[b]:
                    continue
                if v[a]:
                    value *= self.spec.q(alpha, beta) ** (v[a] * w[b])
                if v[self.n + a]:
                    value *= self.spec.q(beta, alpha) ** (v[self.n + a] * w[b])
        return value

    # --- Straightening ---

    def straighten(self, p, N):
        """p (kata positif) dikali N (kata negatif), ditulis dalam urutan normal."""
        if not p or not N:
            return {(N, self.zero_cartan, p): self.field.one}
        return self._straighten_cache.get_or_compute((p, N), lambda: self._straighten(p, N))

    def _straighten(self, p, N):
        field = self.field
        b, rest = N[0], N[1:]
        out = {}

        def add(key, coeff):
            out[key] = out.get(key, field.zero) + coeff

        # p e_{-b} = e_{-b} p + K_b (d_{-b} p) - (p d_{-b}) K'_b^{-1}
        for (n, c, q), coeff in self.straighten(p, rest).items():
            add(((b,) + n, c, q), coeff)

        kb = self.k_vector(b)
        word = FreeElement.word(POSITIVE, field, p)
        for p2, a in derivative(self.left, b, word).terms.items():
            for (n, c, q), coeff in self.straighten(p2, rest).items():
                chi = self.character(kb, self.word_weight(n, NEGATIVE))
                add((n, self.normalize_cartan(_add_vectors(c, kb)), q), a * coeff * chi)

        vb = self.kp_vector(b, -1)
        chi_rest = self.character(vb, self.word_weight(rest, NEGATIVE))
        for p2, a in derivative(self.right, b, word).terms.items():
            for (n, c, q), coeff in self.straighten(p2, rest).items():
                chi = chi_rest * self.character(_neg_vector(vb), self.word_weight(q, POSITIVE))
                add((n, self.normalize_cartan(_add_vectors(c, vb)), q), -a * coeff * chi)
        return {key: value for key, value in out.items() if value}

    def term_product(self, k1, k2):
        """(n1 K^c1 p1)(n2 K^c2 p2) dalam urutan normal."""
        n1, c1, p1 = k1
        n2, c2, p2 = k2
        out = {}
        zero = self.field.zero
        minus_c2 = _neg_vector(c2)
        for (n, c, p), coeff in self.straighten(p1, n2).items():
            factor = coeff
            factor *= self.character(c1, self.word_weight(n, NEGATIVE))
            factor *= self.character(minus_c2, self.word_weight(p, POSITIVE))
            key = (n1 + n, self.normalize_cartan(_add_vectors(c1, c, c2)), p + p2)
            out[key] = out.get(key, zero) + factor
        return out

    def multiply(self, x, y):
        out = {}
        zero = self.field.zero
        for k1, a in x.terms.items():
            for k2, b in y.terms.items():
                for key, c in self.term_product(k1, k2).items():
                    out[key] = out.get(key, zero) + a * b * c
        return AlgebraElement(self, out)

    # --- Konstruktor Elemen ---

    def element(self, terms):
        return AlgebraElement(self, terms)

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {((), self.zero_cartan, ()): self.field.one})

    def scalar(self, value):
        return AlgebraElement(self, {((), self.zero_cartan, ()): value})

    def e(self, alpha):
        return AlgebraElement(self, {((), self.zero_cartan, (alpha,)): self.field.one})

    def f(self, alpha):
        """e_{-alpha}."""
        return AlgebraElement(self, {((alpha,), self.zero_cartan, ()): self.field.one})

    def cartan(self, vector, coeff=None):
        key = ((), self.normalize_cartan(tuple(vector)), ())
        return AlgebraElement(self, {key: self.field.one if coeff is None else coeff})

    def K(self, alpha, exp=1):
        return self.cartan(self.k_vector(alpha, exp))

    def Kp(self, alpha, exp=1):
        return self.cartan(self.kp_vector(alpha, exp))

    def word(self, neg=(), cartan=None, pos=(), coeff=None):
        c = self.zero_cartan if cartan is None else self.normalize_cartan(tuple(cartan))
        return AlgebraElement(self, {(tuple(neg), c, tuple(pos)): self.field.one if coeff is None else coeff})

    def from_free(self, x):
        if x.side == POSITIVE:
            terms = {((), self.zero_cartan, w): c for w, c in x.terms.items()}
        else:
            terms = {(w, self.zero_cartan, ()): c for w, c in x.terms.items()}
        return AlgebraElement(self, terms)

    # --- Reduksi Kuosien ---

    def reduce(self, x):
        """Reduksi kata negatif lalu kata positif modulo ideal (jika ada)."""
        if self.ideal is None or not self.ideal:
            return x
        field = self.field
        grouped = {}
        for (n, c, p), coeff in x.terms.items():
            grouped.setdefault((c, p), {})[n] = coeff
        stage = {}
        for (c, p), words in grouped.items():
            reduced = self.ideal.reduce(FreeElement(NEGATIVE, field, words))
            for n, coeff in reduced.terms.items():
                stage[(n, c, p)] = stage.get((n, c, p), field.zero) + coeff
        grouped = {}
        for (n, c, p), coeff in stage.items():
            grouped.setdefault((n, c), {})[p] = coeff
        out = {}
        for (n, c), words in grouped.items():
            reduced = self.ideal.reduce(FreeElement(POSITIVE, field, words))
            for p, coeff in reduced.terms.items():
                out[(n, c, p)] = out.get((n, c, p), field.zero) + coeff
        return AlgebraElement(self, out)

    # --- Rendering ---

    def render_cartan(self, c):
        parts = []
        for a, alpha in enumerate(self.spec.generators):
            if c[a]:
                parts.append(f"K[{alpha}]" if c[a] == 1 else f"K[{alpha}]^{c[a]}")
        for a, alpha in enumerate(self.spec.generators):
            if c[self.n + a]:
                exp = c[self.n + a]
                parts.append(f"K'[{alpha}]" if exp == 1 else f"K'[{alpha}]^{exp}")
        return "*".join(parts)

    def render_key(self, key):
        n, c, p = key
        parts = []
        if n:
            parts.append(render_word(NEGATIVE, n))
        if any(c):
            parts.append(self.render_cartan(c))
        if p:
            parts.append(render_word(POSITIVE, p))
        return " * ".join(parts) if parts else "1"


class AlgebraElement:
    """Jumlah suku urutan normal; suku nol tidak disimpan, kunci sama digabung."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = {key: coeff for key, coeff in (terms or {}).items() if coeff}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return not (self - other).terms

    __hash__ = None

    def __add__(self, other):
        terms = dict(self.terms)
        zero = self.algebra.field.zero
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, zero) + coeff
        return AlgebraElement(self.algebra, terms)

    def __neg__(self):
        return AlgebraElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        return AlgebraElement(self.algebra, {k: c * coeff for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, coeff):
        return self.scale(coeff)

    def commutator(self, other):
        return self * other - other * self

    def reduced(self):
        return self.algebra.reduce(self)

    def weights(self):
        return {self.algebra.term_weight(key) for key in self.terms}

    def items(self):
        return sorted(self.terms.items(), key=lambda item: (len(item[0][0]) + len(item[0][2]), item[0]))

    def render(self):
        if not self.terms:
            return "0"
        pieces = []
        for key, coeff in self.items():
            text = self.algebra.render_key(key)
            pieces.append(text if coeff == 1 else f"({scalars.render(coeff)})*{text}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"AlgebraElement({self.render()})"


def straighten(algebra, factors):
    """Perkalian berurutan dari faktor (elemen, generator, atau Cartan) ke urutan normal."""
    result = algebra.one()
    for factor in factors:
        result = result * factor
    return result


def weight_of(x):
    """Bobot bersama semua suku (multidegree pos - neg), atau None jika campuran."""
    weights = x.weights()
    if not weights:
        return (0,) * x.algebra.n
    if len(weights) == 1:
        return next(iter(weights))
    return None


# --- Tensor Terpotong ---
# Setiap slot punya tanda s dalam {-1, 0, +1}; grade slot = s*(#pos - #neg).
# Suku dengan grade slot > bound dibuang sebelum straightening.


def slot_grade(key, sign):
    neg, _, pos = key
    return sign * (len(pos) - len(neg))


class TensorElement:
    __slots__ = ("algebra", "rank", "signs", "bound", "terms")

    def __init__(self, algebra, rank, terms=None, signs=None, bound=None):
        self.algebra = algebra
        self.rank = rank
        self.signs = tuple(signs) if signs is not None else _default_signs(rank)
        self.bound = bound
        self.terms = {}
        for keys, coeff in (terms or {}).items():
            if coeff and self.within(keys):
                self.terms[tuple(keys)] = coeff

    def within(self, keys):
        if self.bound is None:
            return True
        return all(slot_grade(key, s) <= self.bound for key, s in zip(keys, self.signs) if s)

    def like(self, terms):
        return TensorElement(self.algebra, self.rank, terms, self.signs, self.bound)

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.rank != other.rank:
            raise GradeMismatchError(f"rank tensor berbeda: {self.rank} dan {other.rank}")

    def __add__(self, other):
        self._check(other)
        zero = self.algebra.field.zero
        terms = dict(self.terms)
        for keys, coeff in other.terms.items():
            terms[keys] = terms.get(keys, zero) + coeff
        return self.like(terms)

    def __neg__(self):
        return self.like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        return self.like({k: c * coeff for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, coeff):
        return self.scale(coeff)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return not (self - other).terms

    __hash__ = None

    def with_bound(self, bound):
        return TensorElement(self.algebra, self.rank, self.terms, self.signs, bound)

    def grade_of(self, keys):
        return tuple(slot_grade(key, s) for key, s in zip(keys, self.signs) if s)

    def grade_components(self):
        parts = {}
        for keys, coeff in self.terms.items():
            parts.setdefault(self.grade_of(keys), {})[keys] = coeff
        return {grade: self.like(terms) for grade, terms in sorted(parts.items())}

    def filter_grades(self, low, high):
        """Suku dengan semua grade slot di [low, high]; low None berarti tanpa batas bawah."""
        return self.like({
            k: c for k, c in self.terms.items()
            if all((low is None or low <= g) and g <= high for g in self.grade_of(k))
        })

    def swap(self):
        """Tukar slot 1 dan 2 (untuk koproduk berlawanan)."""
        if self.rank != 2:
            raise GradeMismatchError("swap hanya untuk tensor rank 2")
        return TensorElement(
            self.algebra, 2, {(k[1], k[0]): c for k, c in self.terms.items()},
            (self.signs[1], self.signs[0]), self.bound,
        )

    def reduced(self):
        """Reduksi kuosien per slot."""
        algebra = self.algebra
        if algebra.ideal is None or not algebra.ideal:
            return self
        terms = dict(self.terms)
        for slot in range(self.rank):
            grouped = {}
            for keys, coeff in terms.items():
                rest = keys[:slot] + keys[slot + 1:]
                grouped.setdefault(rest, {})[keys[slot]] = coeff
            terms = {}
            for rest, slot_terms in grouped.items():
                reduced = algebra.reduce(AlgebraElement(algebra, slot_terms))
                for key, coeff in reduced.terms.items():
                    keys = rest[:slot] + (key,) + rest[slot:]
                    terms[keys] = terms.get(keys, algebra.field.zero) + coeff
        return self.like(terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda item: (self.grade_of(item[0]), item[0]))

    def render_keys(self, keys):
        return " ⊗ ".join(self.algebra.render_key(key) for key in keys)

    def render(self):
        if not self.terms:
            return "0"
        pieces = []
        for keys, coeff in self.items():
            text = self.render_keys(keys)
            pieces.append(text if coeff == 1 else f"({scalars.render(coeff)})*({text})")
        return " + ".join(pieces)


def _default_signs(rank):
    if rank == 2:
        return (-1, 1)
    if rank == 3:
        return (-1, 0, 1)
    return (0,) * rank


def tensor_one(algebra, rank, signs=None, bound=None):
    key = ((), algebra.zero_cartan, ())
    return TensorElement(algebra, rank, {(key,) * rank: algebra.field.one}, signs, bound)


def tensor_of(elements, signs=None, bound=None):
    """Tensor elementer x1 ⊗ x2 (⊗ x3) dari AlgebraElement."""
    algebra = elements[0].algebra
    terms = {}
    zero = algebra.field.zero
    for combo in product(*[list(x.terms.items()) for x in elements]):
        keys = tuple(key for key, _ in combo)
        coeff = algebra.field.one
        for _, c in combo:
            coeff *= c
        terms[keys] = terms.get(keys, zero) + coeff
    return TensorElement(algebra, len(elements), terms, signs, bound)


def tensor_multiply(x, y):
    """Perkalian per slot dengan straightening; suku di atas bound dibuang lebih dulu."""
    x._check(y)
    algebra = x.algebra
    zero = algebra.field.zero
    bound = x.bound if y.bound is None else (y.bound if x.bound is None else min(x.bound, y.bound))
    signs = x.signs
    out = {}
    for k1, a in x.terms.items():
        for k2, b in y.terms.items():
            if bound is not None and any(
                s and slot_grade(p, s) + slot_grade(q, s) > bound for p, q, s in zip(k1, k2, signs)
            ):
                continue
            slot_products = [algebra.term_product(p, q) for p, q in zip(k1, k2)]
            ab = a * b
            for combo in product(*[list(r.items()) for r in slot_products]):
                keys = tuple(key for key, _ in combo)
                coeff = ab
                for _, c in combo:
                    coeff *= c
                out[keys] = out.get(keys, zero) + coeff
    return TensorElement(algebra, x.rank, out, signs, bound)


def embed(x, slots, rank=3, signs=None, bound=None):
    """Tanam tensor rank 2 ke slot (i, j) dari tensor rank lebih besar; slot lain 1."""
    algebra = x.algebra
    unit = ((), algebra.zero_cartan, ())
    terms = {}
    for keys, coeff in x.terms.items():
        full = [unit] * rank
        for slot, key in zip(slots, keys):
            full[slot] = key
        terms[tuple(full)] = coeff
    return TensorElement(algebra, rank, terms, signs, bound)


# --- Konjugasi R0 ---


def _right_cartan(algebra, key, v):
    """(n K^c p) K^v = chi_v(wt p)^-1 n K^(c+v) p."""
    n, c, p = key
    coeff = algebra.character(_neg_vector(v), algebra.word_weight(p, POSITIVE))
    return (n, algebra.normalize_cartan(_add_vectors(c, v)), p), coeff


def _left_cartan(algebra, key, v):
    """K^v (n K^c p) = chi_v(wt n) n K^(v+c) p."""
    n, c, p = key
    coeff = algebra.character(v, algebra.word_weight(n, NEGATIVE))
    return (n, algebra.normalize_cartan(_add_vectors(c, v)), p), coeff


def conjugation(x, i, j):
    """
    c_ij dengan X R0_ij = R0_ij c_ij(X): slot i dikali kanan dengan K'^(-wt slot j),
    slot j dikali kiri dengan K^(-wt slot i).
    """
    algebra = x.algebra
    out = {}
    zero = algebra.field.zero
    for keys, coeff in x.terms.items():
        wi = algebra.term_weight(keys[i])
        wj = algebra.term_weight(keys[j])
        keys = list(keys)
        factor = coeff
        if any(wj):
            keys[i], chi = _right_cartan(algebra, keys[i], algebra.kp_of_weight(wj, -1))
            factor *= chi
        if any(wi):
            keys[j], chi = _left_cartan(algebra, keys[j], algebra.k_of_weight(wi, -1))
            factor *= chi
        keys = tuple(keys)
        out[keys] = out.get(keys, zero) + factor
    return x.like(out)


def chain_product(factors):
    """
    Produk faktor R0-berprefiks: factors berisi (pasangan slot atau None, tensor).
    Semua prefiks R0 dikumpulkan di kiri; mengembalikan (daftar pasangan, seri).
    """
    prefixes = []
    result = None
    for pair, series in factors:
        if result is None:
            result = series
        else:
            if pair is not None:
                result = conjugation(result, *pair)
            result = tensor_multiply(result, series)
        if pair is not None:
            prefixes.append(pair)
    return prefixes, result
