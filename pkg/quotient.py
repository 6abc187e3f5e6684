# quotient.py

import logging

import linalg
from freealg import FreeElement, POSITIVE, NEGATIVE, compositions, sub_degrees
from qdiff import DerivativeKind, derivative, find_constants, mirror_constant
from shared_state import SharedCache
from errors import PreconditionError

log = logging.getLogger("QUOTIENT")


def _splits(d):
    """Semua e dengan 0 <= e <= d (per komponen)."""
    if not d:
        return [()]
    result = []
    for head in range(d[0] + 1):
        for tail in _splits(d[1:]):
            result.append((head,) + tail)
    return result


class ObstructionIdeal:
    """
    Ideal dua sisi yang dibangkitkan konstanta multihomogen. Potongan graded per
    (sisi, multidegree) dihitung malas sebagai basis RREF dari span{u C v} dan
    disimpan di SharedCache. Objek tidak berubah setelah dibuat.
    """

    def __init__(self, spec, generators=(), gmax=2, agreement=None):
        self.spec = spec
        self.generators = list(generators)
        self.gmax = gmax
        # Kunci: multidegree, Nilai: True jika konstanta kiri dan kanan sama
        self.agreement = dict(agreement or {})
        self._pieces = SharedCache("ideal")
        for side, element in self.generators:
            if element.side != side:
                raise PreconditionError("generator ideal: sisi tidak cocok")

    def __bool__(self):
        return bool(self.generators)

    def generators_on(self, side):
        return [element for s, element in self.generators if s == side]

    def _generator_degree(self, element):
        degrees = set(element.components(self.spec.generators))
        if len(degrees) != 1:
            raise PreconditionError(f"generator ideal tidak multihomogen: {element.render()}")
        return next(iter(degrees))

    def _compute_piece(self, side, d):
        spec = self.spec
        words = spec.words(d)
        position = {word: c for c, word in enumerate(words)}
        field = spec.field
        rows = []
        for element in self.generators_on(side):
            dc = self._generator_degree(element)
            rest = sub_degrees(d, dc)
            if any(x < 0 for x in rest):
                continue
            for left in _splits(rest):
                right = sub_degrees(rest, left)
                for u in spec.words(left):
                    for v in spec.words(right):
                        row = [field.zero] * len(words)
                        for word, coeff in element.terms.items():
                            row[position[u + word + v]] += coeff
                        rows.append(row)
        if not rows:
            return words, [], ()
        basis, pivots = linalg.row_space_basis(rows, len(words), field)
        log.debug("Potongan ideal A%s di %s: dimensi %d", side, d, len(pivots))
        return words, basis, pivots

    def piece(self, side, d):
        d = tuple(d)
        return self._pieces.get_or_compute((side, d), lambda: self._compute_piece(side, d))

    def dimension(self, side, d):
        return len(self.piece(side, d)[2])

    def basis_words(self, side, d):
        """Kata non-pivot: basis komplemen deterministik dari A/I di multidegree d."""
        words, _, pivots = self.piece(side, d)
        pivot_set = set(pivots)
        return [word for c, word in enumerate(words) if c not in pivot_set]

    def reduce(self, x):
        """Proyeksi ke komplemen non-pivot; linear, idempoten, nol tepat pada I."""
        if not self.generators_on(x.side):
            return x
        field = x.field
        terms = {}
        for d, component in x.components(self.spec.generators).items():
            words, basis, pivots = self.piece(x.side, d)
            if not pivots:
                terms.update(component.terms)
                continue
            position = {word: c for c, word in enumerate(words)}
            vector = [field.zero] * len(words)
            for word, coeff in component.terms.items():
                vector[position[word]] = coeff
            for row, pivot in zip(basis, pivots):
                factor = vector[pivot]
                if factor:
                    vector = [a - factor * b for a, b in zip(vector, row)]
            for c, coeff in enumerate(vector):
                if coeff:
                    terms[words[c]] = coeff
        return FreeElement(x.side, field, terms)

    def contains(self, x):
        return not self.reduce(x)

    def to_dict(self):
        return {
            "gmax": self.gmax,
            "generators": [
                {"side": side, "element": element.render()} for side, element in self.generators
            ],
            "left_right_agreement": {",".join(map(str, d)): ok for d, ok in sorted(self.agreement.items())},
        }


def reduce(x, ideal):
    return x if ideal is None else ideal.reduce(x)


def _same_span(a, b, ideal, side, d):
    """Dua daftar elemen (sudah tereduksi) merentang subruang yang sama."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    words = ideal.basis_words(side, d)
    field = ideal.spec.field

    def vectors(elements):
        return [[element.coefficient(word) for word in words] for element in elements]

    rank_a = linalg.rank(vectors(a), len(words), field)
    rank_ab = linalg.rank(vectors(a) + vectors(b), len(words), field)
    return rank_a == rank_ab == len(b)


def build_ideal(spec, gmax):
    """
    Bangun ideal konstanta grade demi grade (2..gmax). Di setiap grade konstanta
    dicari di kuosien oleh potongan grade lebih rendah; konstanta A+ (turunan kiri)
    ditambahkan bersama cerminnya di A-. Kesamaan konstanta kiri dan kanan dicatat.
    """
    if gmax < 2:
        raise PreconditionError(f"build_ideal: gmax harus >= 2, diterima {gmax}")
    left = DerivativeKind.of("left_minus", spec)
    right_plus = DerivativeKind.of("right_plus", spec)
    generators = []
    agreement = {}
    current = ObstructionIdeal(spec, generators, gmax)
    for grade in range(2, gmax + 1):
        found = []
        for d in compositions(grade, spec.rank):
            report = find_constants(left, d, spec, current)
            if not report.basis:
                continue
            right_report = find_constants("right_minus", d, spec, current)
            same = _same_span(report.basis, right_report.basis, current, POSITIVE, d)
            agreement[d] = same
            if not same:
                log.warning("Konstanta kiri dan kanan berbeda di multidegree %s", d)
            for element in report.basis:
                mirrored = mirror_constant(element)
                reduced_images = [
                    current.reduce(derivative(right_plus, gamma, mirrored)) for gamma in spec.generators
                ]
                if any(reduced_images):
                    log.warning("Cermin %s bukan konstanta right_plus", element.render())
                found.append((POSITIVE, element))
                found.append((NEGATIVE, mirrored))
                log.info("Generator ideal baru di %s: %s", d, element.render())
        if found:
            generators = generators + found
            current = ObstructionIdeal(spec, generators, gmax, agreement)
    return ObstructionIdeal(spec, generators, gmax, agreement)
