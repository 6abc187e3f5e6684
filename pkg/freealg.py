# freealg.py

import logging
from dataclasses import dataclass, field as dc_field
from itertools import product

from sympy import Rational, ilcm
from sympy.utilities.iterables import multiset_permutations

import scalars
from errors import SideMismatchError, SpecError

log = logging.getLogger("FREEALG")

POSITIVE = "+"
NEGATIVE = "-"
SIDES = (POSITIVE, NEGATIVE)


def other_side(side):
    return NEGATIVE if side == POSITIVE else POSITIVE


def render_word(side, word):
    if not word:
        return "1"
    return "e[" + " ".join(f"{side}{letter}" for letter in word) + "]"


# --- Elemen Aljabar Bebas ---


class FreeElement:
    """
    Kombinasi linear kata satu sisi (A+ atau A-). Koefisien nol tidak pernah
    disimpan; kata disimpan datar sebagai tuple huruf.
    """

    __slots__ = ("side", "field", "terms")

    def __init__(self, side, field, terms=None):
        if side not in SIDES:
            raise SideMismatchError(f"sisi tidak dikenal: {side!r}")
        self.side = side
        self.field = field
        self.terms = {}
        for word, coeff in (terms or {}).items():
            if coeff:
                self.terms[tuple(word)] = coeff

    @classmethod
    def zero(cls, side, field):
        return cls(side, field)

    @classmethod
    def one(cls, side, field):
        return cls(side, field, {(): field.one})

    @classmethod
    def word(cls, side, field, letters, coeff=None):
        return cls(side, field, {tuple(letters): field.one if coeff is None else coeff})

    def _check(self, other):
        if not isinstance(other, FreeElement):
            raise SideMismatchError("operand bukan FreeElement")
        if other.side != self.side:
            raise SideMismatchError(f"mencampur elemen A{self.side} dan A{other.side}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FreeElement) or other.side != self.side:
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[word] == other.terms[word] for word in self.terms)

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms.get(word, self.field.zero) + coeff
        return FreeElement(self.side, self.field, terms)

    def __neg__(self):
        return FreeElement(self.side, self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        if not coeff:
            return FreeElement(self.side, self.field)
        return FreeElement(self.side, self.field, {w: c * coeff for w, c in self.terms.items()})

    def __mul__(self, other):
        """Perkalian bebas: konkatenasi kata, bilinear."""
        if not isinstance(other, FreeElement):
            return self.scale(other)
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                terms[word] = terms.get(word, self.field.zero) + c1 * c2
        return FreeElement(self.side, self.field, terms)

    def __rmul__(self, coeff):
        return self.scale(coeff)

    def coefficient(self, word):
        return self.terms.get(tuple(word), self.field.zero)

    def items(self):
        return sorted(self.terms.items())

    def grades(self):
        return sorted({len(word) for word in self.terms})

    def grade_component(self, grade):
        return FreeElement(self.side, self.field, {w: c for w, c in self.terms.items() if len(w) == grade})

    def multidegree_component(self, d, generators):
        d = tuple(d)
        return FreeElement(
            self.side, self.field,
            {w: c for w, c in self.terms.items() if multidegree(w, generators) == d},
        )

    def components(self, generators):
        """Dekomposisi per multidegree; jumlah semua komponen = elemen asli."""
        parts = {}
        for word, coeff in self.terms.items():
            parts.setdefault(multidegree(word, generators), {})[word] = coeff
        return {d: FreeElement(self.side, self.field, terms) for d, terms in sorted(parts.items())}

    def map_coefficients(self, fn, field=None):
        target = field or self.field
        return FreeElement(self.side, target, {w: fn(c) for w, c in self.terms.items()})

    def mirror(self):
        """Kata dibalik dan dipindah ke sisi lain: e[+a b] -> e[-b a]."""
        return FreeElement(other_side(self.side), self.field, {w[::-1]: c for w, c in self.terms.items()})

    def render(self):
        if not self.terms:
            return "0"
        pieces = []
        for word, coeff in self.items():
            text = render_word(self.side, word)
            if coeff == 1:
                pieces.append(text)
            else:
                pieces.append(f"({scalars.render(coeff)})*{text}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"FreeElement({self.render()})"


def fa_multiply(x, y):
    return x * y


def multidegree(word, generators):
    counts = [0] * len(generators)
    position = {g: i for i, g in enumerate(generators)}
    for letter in word:
        counts[position[letter]] += 1
    return tuple(counts)


def multidegree_component(x, d, generators):
    return x.multidegree_component(d, generators)


def letters_of(d, generators):
    letters = []
    for g, count in zip(generators, d):
        letters.extend([g] * count)
    return letters


def words_of_multidegree(d, generators):
    """Semua kata dengan multidegree d, terurut leksikografis menurut urutan generator."""
    letters = letters_of(d, generators)
    if not letters:
        return [()]
    return [tuple(p) for p in multiset_permutations(letters)]


def words_of_grade(grade, generators):
    return [tuple(w) for w in product(generators, repeat=grade)]


def compositions(grade, count):
    """Multidegree (vektor N^count) dengan total grade, urutan leksikografis menurun."""
    result = []
    for d in product(range(grade, -1, -1), repeat=count):
        if sum(d) == grade:
            result.append(d)
    return result


def add_degrees(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub_degrees(a, b):
    return tuple(x - y for x, y in zip(a, b))


def unit_degree(index, count):
    return tuple(1 if i == index else 0 for i in range(count))


# --- Data Cartan ---


@dataclass(frozen=True)
class CartanData:
    """
    Card(M), nilai H_a(beta) dan matriks phi^{ab} rasional. Menurunkan
    q_{ab} = base^(D * sum phi^{ab} H_a(alpha) H_b(beta)), dengan simbol base
    mewakili akar ke-D dari q.
    """

    rank: int
    H: dict
    phi: tuple
    base: str = "q"

    def pairing(self, alpha, beta):
        total = Rational(0)
        for a in range(self.rank):
            for b in range(self.rank):
                total += Rational(self.phi[a][b]) * Rational(self.H[alpha][a]) * Rational(self.H[beta][b])
        return total

    def denominator(self, generators):
        D = 1
        for alpha in generators:
            for beta in generators:
                D = ilcm(D, self.pairing(alpha, beta).q)
        return int(D)

    def exponents(self, generators):
        D = self.denominator(generators)
        return {
            (alpha, beta): int(self.pairing(alpha, beta) * D)
            for alpha in generators for beta in generators
        }

    def check(self, generators):
        for alpha in generators:
            values = self.H.get(alpha)
            if values is None or len(values) != self.rank:
                raise SpecError(f"cartan_data: H untuk generator {alpha} harus punya {self.rank} nilai")
        if len(self.phi) != self.rank or any(len(row) != self.rank for row in self.phi):
            raise SpecError(f"cartan_data: phi harus matriks {self.rank}x{self.rank}")


# --- Spesifikasi Aljabar ---


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """
    Generator N (bilangan bulat, terurut), matriks q_{ab} di field scalar,
    data Cartan opsional dan relasi grup-like di A0 (vektor eksponen K lalu K').
    """

    generators: tuple
    field: object
    qmatrix: dict
    cartan_data: CartanData = None
    relations: tuple = ()
    specializations: tuple = ()
    name: str = ""
    _position: dict = dc_field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_position", {g: i for i, g in enumerate(self.generators)})

    @classmethod
    def generic(cls, generators, name="generic"):
        generators = tuple(sorted(generators))
        names = [scalars.symbol_name(a, b) for a in generators for b in generators]
        field = scalars.make_field(names)
        qmatrix = {
            (a, b): scalars.gen(field, scalars.symbol_name(a, b))
            for a in generators for b in generators
        }
        return cls(generators, field, qmatrix, name=name)

    @classmethod
    def from_cartan(cls, generators, cartan_data, name="", extra_symbols=()):
        generators = tuple(sorted(generators))
        cartan_data.check(generators)
        field = scalars.make_field([cartan_data.base, *extra_symbols])
        base = scalars.gen(field, cartan_data.base)
        qmatrix = {key: base ** exp for key, exp in cartan_data.exponents(generators).items()}
        return cls(generators, field, qmatrix, cartan_data=cartan_data, name=name)

    @property
    def rank(self):
        return len(self.generators)

    def index(self, alpha):
        try:
            return self._position[alpha]
        except KeyError:
            raise SpecError(f"generator {alpha!r} tidak ada di N = {list(self.generators)}")

    def q(self, alpha, beta):
        return self.qmatrix[(alpha, beta)]

    def sigma(self, alpha, beta):
        return self.qmatrix[(alpha, beta)] * self.qmatrix[(beta, alpha)]

    def multidegree(self, word):
        return multidegree(word, self.generators)

    def words(self, d):
        return words_of_multidegree(d, self.generators)

    def unit(self, alpha):
        return unit_degree(self.index(alpha), self.rank)

    def element(self, side, letters, coeff=None):
        return FreeElement.word(side, self.field, letters, coeff)

    def specialize(self, s):
        if s.source is not self.field and scalars.symbol_names(s.source) != scalars.symbol_names(self.field):
            raise SpecError("spesialisasi tidak cocok dengan field spesifikasi")
        qmatrix = {key: s.apply(value) for key, value in self.qmatrix.items()}
        log.debug("Spesialisasi %s diterapkan pada %s", s.label, self.name)
        return AlgebraSpec(
            self.generators, s.target, qmatrix,
            cartan_data=self.cartan_data,
            relations=self.relations,
            specializations=self.specializations + (s.label,),
            name=self.name,
        )

    def with_cartan_relations(self, relations):
        relations = tuple(tuple(r) for r in relations)
        for vector in relations:
            if len(vector) != 2 * self.rank:
                raise SpecError(f"relasi Cartan harus panjang {2 * self.rank}, diterima {vector}")
        return AlgebraSpec(
            self.generators, self.field, self.qmatrix,
            cartan_data=self.cartan_data,
            relations=self.relations + relations,
            specializations=self.specializations,
            name=self.name,
        )

    def degenerate_generators(self):
        """Generator alpha dengan q_{ab} q_{ba} = 1 untuk semua beta (tingkat pairing)."""
        return [
            alpha for alpha in self.generators
            if all(scalars.same(self.sigma(alpha, beta), self.field.one) for beta in self.generators)
        ]

    def validate(self):
        """Validasi; mengembalikan daftar peringatan (bukan error) untuk degenerasi tingkat pairing."""
        if not self.generators:
            raise SpecError("generators: N tidak boleh kosong")
        if len(set(self.generators)) != len(self.generators):
            raise SpecError("generators: indeks ganda")
        for alpha in self.generators:
            for beta in self.generators:
                value = self.qmatrix.get((alpha, beta))
                if value is None:
                    raise SpecError(f"qmatrix: entri q[{alpha},{beta}] tidak ada")
                if not value:
                    raise SpecError(f"qmatrix: q[{alpha},{beta}] = 0, harus invertibel")
        if self.cartan_data is not None:
            self._check_cartan_consistency()
        warnings = []
        for alpha in self.degenerate_generators():
            message = (
                f"generator {alpha}: q[{alpha},b]*q[b,{alpha}] = 1 untuk semua b "
                f"(degenerasi tingkat pairing)"
            )
            log.warning(message)
            warnings.append(message)
        return warnings

    def _check_cartan_consistency(self):
        data = self.cartan_data
        names = scalars.symbol_names(self.field)
        if data.base not in names:
            return
        base = scalars.gen(self.field, data.base)
        for key, exp in data.exponents(self.generators).items():
            if not scalars.same(self.qmatrix[key], base ** exp):
                raise SpecError(
                    f"qmatrix q[{key[0]},{key[1]}] = {scalars.render(self.qmatrix[key])} "
                    f"tidak konsisten dengan cartan_data ({data.base}^{exp})"
                )

    def describe(self):
        return {
            "name": self.name,
            "generators": list(self.generators),
            "field": scalars.render_field(self.field),
            "qmatrix": {
                f"{a},{b}": scalars.render(self.qmatrix[(a, b)])
                for a in self.generators for b in self.generators
            },
            "specializations": list(self.specializations),
            "relations": [list(r) for r in self.relations],
        }
