# scalars.py

import re
import logging
from dataclasses import dataclass, field as dc_field

import numpy as np
from sympy import Symbol, I, sqrt, sympify, sstr
from sympy.polys.domains import QQ
from sympy.polys.fields import FracField
from sympy.polys.orderings import grlex
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor

from errors import ScalarDivisionError, SpecializationPoleError, PreconditionError, SpecError

log = logging.getLogger("SCALARS")

# --- Penamaan Simbol ---
# Simbol internal sympy: q_1_2, ditampilkan sebagai q[1,2].
_INTERNAL = re.compile(r"^q_(\d+)_(\d+)$")
_BRACKET = re.compile(r"q\[\s*(\d+)\s*,\s*(\d+)\s*\]")
_TRANSFORMS = standard_transformations + (convert_xor,)


def symbol_name(i, j):
    return f"q_{i}_{j}"


def display_name(name):
    match = _INTERNAL.match(name)
    if match:
        return f"q[{match.group(1)},{match.group(2)}]"
    return name


def internal_name(text):
    text = text.strip()
    match = _BRACKET.fullmatch(text)
    if match:
        return symbol_name(match.group(1), match.group(2))
    return text


def _name_order(name):
    match = _INTERNAL.match(name)
    if match:
        return (1, int(match.group(1)), int(match.group(2)), "")
    return (0, 0, 0, name)


def make_field(names, domain=QQ):
    """Field Q(simbol) dengan urutan monomial grlex; simbol q[i,j] diurutkan per (i, j)."""
    ordered = sorted(set(names), key=_name_order)
    if not ordered:
        raise SpecError("field: minimal satu simbol diperlukan")
    return FracField(tuple(Symbol(name) for name in ordered), domain, grlex)


def symbol_names(field):
    return [symbol.name for symbol in field.symbols]


def gen(field, name):
    for symbol, generator in zip(field.symbols, field.gens):
        if symbol.name == name:
            return generator
    raise SpecError(f"simbol {display_name(name)} tidak ada di field")


# --- Aritmetika ---


def is_zero(x):
    return not x


def same(a, b):
    return not (a - b)


def divide(a, b):
    if not b:
        raise ScalarDivisionError("pembagian dengan Scalar nol")
    return a / b


def scalar_arith(a, b, op):
    """Operasi field: add, mul, div, neg, inv. Hasil selalu dalam bentuk kanonik sympy."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return divide(a, b)
    if op == "neg":
        return -a
    if op == "inv":
        return divide(a.field.one, a)
    raise PreconditionError(f"operasi scalar tidak dikenal: {op}")


def q_number(m, q):
    """(m)_q = 1 + q + ... + q^(m-1); (0)_q = 0."""
    if m < 0:
        raise PreconditionError(f"q_number: m harus >= 0, diterima {m}")
    total = q.field.zero
    power = q.field.one
    for _ in range(m):
        total += power
        power *= q
    return total


def q_factorial(m, q):
    value = q.field.one
    for k in range(1, m + 1):
        value *= q_number(k, q)
    return value


def q_binomial(k, m, q):
    """
    Koefisien binomial Gauss lewat rekursi q-Pascal [k,m] = [k-1,m-1] + q^m [k-1,m],
    tanpa pembagian, jadi tetap polinomial di akar satuan.
    """
    if k < 0 or m < 0 or m > k:
        raise PreconditionError(f"q_binomial: butuh 0 <= m <= k, diterima k={k}, m={m}")
    one = q.field.one
    row = [one]
    for n in range(1, k + 1):
        nxt = []
        for j in range(n + 1):
            left = row[j - 1] if j >= 1 else q.field.zero
            right = row[j] * q ** j if j < n else q.field.zero
            nxt.append(left + right)
        row = nxt
    return row[m]


def is_signed_monomial(x):
    """True jika x = ±1 × monomial Laurent."""
    if not x:
        return False
    num_terms = x.numer.terms()
    den_terms = x.denom.terms()
    if len(num_terms) != 1 or len(den_terms) != 1:
        return False
    domain = x.field.domain
    ratio = domain.quo(num_terms[0][1], den_terms[0][1])
    return ratio == domain.one or ratio == -domain.one


def unit_equivalent(a, b):
    """a dan b sama sampai faktor unit (±1 × monomial Laurent)."""
    if not a or not b:
        return (not a) and (not b)
    return is_signed_monomial(a / b)


# --- Rendering Kanonik ---


def _grlex_key(item):
    return (sum(item[0]), item[0])


def _coeff_parts(domain, coeff):
    if domain.is_QQ:
        negative = coeff < 0
        value = -coeff if negative else coeff
        numer, denom = int(domain.numer(value)), int(domain.denom(value))
        body = str(numer) if denom == 1 else f"{numer}/{denom}"
        return negative, body
    if coeff == domain.one:
        return False, "1"
    if coeff == -domain.one:
        return True, "1"
    return False, f"({sstr(domain.to_sympy(coeff))})"


def _monomial_text(names, exps):
    parts = []
    for name, exp in zip(names, exps):
        if exp == 0:
            continue
        shown = display_name(name)
        parts.append(shown if exp == 1 else f"{shown}^{exp}")
    return "*".join(parts)


def _terms_text(domain, names, terms):
    pieces = []
    for index, (exps, coeff) in enumerate(terms):
        negative, body = _coeff_parts(domain, coeff)
        mono = _monomial_text(names, exps)
        if mono:
            text = mono if body == "1" else f"{body}*{mono}"
        else:
            text = body
        if index == 0:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


def _shifted_terms(poly, lead_monom, lead_coeff, domain):
    shifted = []
    for monom, coeff in poly.terms():
        exps = tuple(a - b for a, b in zip(monom, lead_monom))
        shifted.append((exps, domain.quo(coeff, lead_coeff)))
    return sorted(shifted, key=_grlex_key, reverse=True)


def render(x):
    """
    Bentuk string kanonik: pembilang dan penyebut dibagi dengan suku utama
    penyebut (grlex), jadi penyebut selalu diawali 1. Contoh:
    1/(1 - q[1,2]^-1*q[2,1]^-1).
    """
    if not x:
        return "0"
    field = x.field
    domain = field.domain
    names = symbol_names(field)
    lead_monom, lead_coeff = x.denom.LM, x.denom.LC
    num_terms = _shifted_terms(x.numer, lead_monom, lead_coeff, domain)
    den_terms = _shifted_terms(x.denom, lead_monom, lead_coeff, domain)
    numerator = _terms_text(domain, names, num_terms)
    if len(den_terms) == 1:
        return numerator
    if len(num_terms) > 1:
        numerator = f"({numerator})"
    return f"{numerator}/({_terms_text(domain, names, den_terms)})"


def to_latex(x):
    from sympy import latex

    mapping = {}
    for symbol in x.field.symbols:
        match = _INTERNAL.match(symbol.name)
        if match:
            mapping[symbol] = f"q_{{{match.group(1)}{match.group(2)}}}"
    return latex(x.as_expr(), symbol_names=mapping)


# --- Parsing ---


def parse_scalar(text, field):
    """Parse string seperti '1 - q[1,2]^-1' menjadi elemen field."""
    cleaned = _BRACKET.sub(lambda m: symbol_name(m.group(1), m.group(2)), str(text))
    local = {symbol.name: symbol for symbol in field.symbols}
    local.update({"I": I, "sqrt": sqrt})
    try:
        expr = parse_expr(cleaned, local_dict=local, transformations=_TRANSFORMS)
    except Exception as exc:
        raise SpecError(f"tidak bisa membaca scalar {text!r}: {exc}")
    try:
        if not expr.free_symbols:
            return field.ground_new(field.domain.from_sympy(expr))
        return field.from_expr(expr)
    except Exception as exc:
        raise SpecError(f"scalar {text!r} bukan elemen field {render_field(field)}: {exc}")


def free_symbol_names(text):
    """Nama simbol internal yang muncul di string scalar (tanpa I dan sqrt)."""
    cleaned = _BRACKET.sub(lambda m: symbol_name(m.group(1), m.group(2)), str(text))
    try:
        expr = parse_expr(cleaned, local_dict={"I": I, "sqrt": sqrt}, transformations=_TRANSFORMS)
    except Exception as exc:
        raise SpecError(f"tidak bisa membaca scalar {text!r}: {exc}")
    return sorted(symbol.name for symbol in expr.free_symbols)


def render_field(field):
    names = ", ".join(display_name(name) for name in symbol_names(field))
    return f"{field.domain}({names})"


# --- Spesialisasi ---


@dataclass(frozen=True, eq=False)
class Specialization:
    """
    Homomorfisma dari field sumber ke field target: setiap simbol dipetakan ke
    elemen target (monomial Laurent atau bilangan). Simbol yang tidak dipetakan
    dikirim ke simbol bernama sama di target.
    """

    source: FracField
    target: FracField
    images: dict
    label: str = ""
    _gen_images: list = dc_field(default=None, repr=False)

    def __post_init__(self):
        target_names = set(symbol_names(self.target))
        gen_images = []
        for name in symbol_names(self.source):
            if name in self.images:
                image = self.images[name]
                if not image:
                    raise SpecError(f"spesialisasi {display_name(name)} -> 0: simbol q harus invertibel")
            elif name in target_names:
                image = gen(self.target, name)
            else:
                raise SpecError(f"spesialisasi: simbol {display_name(name)} tidak punya bayangan")
            gen_images.append(image)
        object.__setattr__(self, "_gen_images", gen_images)

    @classmethod
    def from_strings(cls, source, mapping, extension=(), label=""):
        domain = source.domain
        if extension:
            domain = QQ.algebraic_field(*[sympify(text) for text in extension])
        target = make_field(symbol_names(source), domain)
        source_names = set(symbol_names(source))
        images = {}
        for key, text in mapping.items():
            name = internal_name(str(key))
            if name not in source_names:
                raise SpecError(f"spesialisasi: simbol {key!r} tidak ada di field sumber")
            images[name] = parse_scalar(str(text), target)
        return cls(source, target, images, label or _describe(mapping))

    def _map_poly(self, poly):
        target = self.target
        total = target.zero
        source_domain = self.source.domain
        for monom, coeff in poly.terms():
            term = target.ground_new(target.domain.convert_from(coeff, source_domain))
            for image, exp in zip(self._gen_images, monom):
                if exp:
                    term = term * image ** exp
            total += term
        return total

    def apply(self, x):
        numer = self._map_poly(x.numer)
        denom = self._map_poly(x.denom)
        if not denom:
            text = render(x)
            raise SpecializationPoleError(
                f"penyebut dari {text} menjadi nol di bawah spesialisasi {self.label}", text
            )
        return numer / denom

    __call__ = apply


def _describe(mapping):
    return ", ".join(f"{key} -> {value}" for key, value in mapping.items())


def specialize(x, s):
    return s.apply(x)


# --- Evaluasi di Titik Rasional ---


def random_point(field, rng, high=10**6):
    """Titik rasional acak (seed tetap lewat rng numpy) untuk semua simbol field."""
    point = {}
    for name in symbol_names(field):
        numer = int(rng.integers(1, high))
        denom = int(rng.integers(1, high))
        sign = -1 if int(rng.integers(0, 2)) else 1
        point[name] = QQ(sign * numer, denom)
    return point


def make_rng(seed):
    return np.random.default_rng(seed)


def _eval_poly(poly, values, domain):
    total = domain.zero
    for monom, coeff in poly.terms():
        term = coeff
        for value, exp in zip(values, monom):
            if exp:
                term = term * value ** exp
        total += term
    return total


def evaluate(x, point):
    """Nilai eksak x di titik rasional; penyebut nol dianggap pole."""
    field = x.field
    if not field.domain.is_QQ:
        raise PreconditionError("evaluasi titik hanya untuk field atas QQ")
    values = [point[name] for name in symbol_names(field)]
    numer = _eval_poly(x.numer, values, QQ)
    denom = _eval_poly(x.denom, values, QQ)
    if not denom:
        raise SpecializationPoleError(f"penyebut dari {render(x)} nol di titik evaluasi", render(x))
    return numer / denom
