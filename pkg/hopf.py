# hopf.py

import logging
from dataclasses import dataclass, field as dc_field

import scalars
from freealg import POSITIVE, NEGATIVE
from algebra import TensorElement, AlgebraElement, tensor_multiply, conjugation
from deformation import driving_terms, PAIR_SIGNS
from rmatrix import with_algebra
from yangbaxter import TRIPLE_SIGNS
from errors import PreconditionError
from shared_state import SharedCache
from worker import run_blocks

log = logging.getLogger("HOPF")


# --- Peta Hopf ---


class HopfMaps:
    """
    Koproduk, kounit dan antipode pada suku urutan normal n K^c p.
    Koproduk diperluas multiplikatif, antipode anti-multiplikatif.
    """

    def __init__(self, algebra, bound=None):
        self.algebra = algebra
        self.bound = bound
        self.unit = ((), algebra.zero_cartan, ())
        self._letters = SharedCache("koproduk")

    def tensor(self, terms, bound="default"):
        bound = self.bound if bound == "default" else bound
        return TensorElement(self.algebra, 2, terms, PAIR_SIGNS, bound)

    def _letter_coproduct(self, side, alpha):
        return self._letters.get_or_compute((side, alpha), lambda: self._compute_letter(side, alpha))

    def _compute_letter(self, side, alpha):
        a = self.algebra
        zero_c = a.zero_cartan
        one = a.field.one
        if side == POSITIVE:
            # 1⊗e_a + e_a⊗K_a
            terms = {
                (self.unit, ((), zero_c, (alpha,))): one,
                (((), zero_c, (alpha,)), ((), a.normalize_cartan(a.k_vector(alpha)), ())): one,
            }
        else:
            # K'_a^-1⊗e_-a + e_-a⊗1
            terms = {
                (((), a.normalize_cartan(a.kp_vector(alpha, -1)), ()), ((alpha,), zero_c, ())): one,
                (((alpha,), zero_c, ()), self.unit): one,
            }
        return self.tensor(terms, None)

    def _cartan_coproduct(self, c):
        key = ((), c, ())
        return self.tensor({(key, key): self.algebra.field.one}, None)

    def coproduct_key(self, key):
        """Hasil kali peta huruf tanpa pemotongan; bound diterapkan di akhir."""
        n, c, p = key
        result = self.tensor({(self.unit, self.unit): self.algebra.field.one}, None)
        for alpha in n:
            result = tensor_multiply(result, self._letter_coproduct(NEGATIVE, alpha))
        if any(c):
            result = tensor_multiply(result, self._cartan_coproduct(c))
        for alpha in p:
            result = tensor_multiply(result, self._letter_coproduct(POSITIVE, alpha))
        return result.with_bound(self.bound)

    def coproduct(self, x):
        total = self.tensor({})
        for key, coeff in x.terms.items():
            total = total + self.coproduct_key(key).scale(coeff)
        return total

    def counit(self, x):
        """Hanya suku Cartan murni yang bertahan; grup-like dikirim ke 1."""
        total = self.algebra.field.zero
        for (n, _, p), coeff in x.terms.items():
            if not n and not p:
                total += coeff
        return total

    def _letter_antipode(self, side, alpha):
        a = self.algebra
        if side == POSITIVE:
            # S(e_a) = -e_a K_a^-1
            return -(a.e(alpha) * a.K(alpha, -1))
        # S(e_-a) = -K'_a e_-a
        return -(a.Kp(alpha) * a.f(alpha))

    def antipode_key(self, key):
        n, c, p = key
        a = self.algebra
        result = a.one()
        for alpha in reversed(p):
            result = result * self._letter_antipode(POSITIVE, alpha)
        if any(c):
            result = result * a.cartan(tuple(-x for x in c))
        for alpha in reversed(n):
            result = result * self._letter_antipode(NEGATIVE, alpha)
        return result

    def antipode(self, x):
        total = self.algebra.zero()
        for key, coeff in x.terms.items():
            total = total + self.antipode_key(key).scale(coeff)
        return total


# --- Operasi per Slot ---


def opposite(T):
    """Delta' : tukar isi slot, tanda slot tetap."""
    return T.like({(k[1], k[0]): c for k, c in T.terms.items()})


def multiply_slots(T):
    """m: A⊗A -> A."""
    algebra = T.algebra
    total = algebra.zero()
    for (k0, k1), coeff in T.terms.items():
        product = algebra.element({k0: algebra.field.one}) * algebra.element({k1: algebra.field.one})
        total = total + product.scale(coeff)
    return total


def map_slot(T, slot, fn):
    """Terapkan peta linear A -> A pada satu slot."""
    algebra = T.algebra
    zero = algebra.field.zero
    out = {}
    for keys, coeff in T.terms.items():
        image = fn(algebra.element({keys[slot]: algebra.field.one}))
        for key, c in image.terms.items():
            new = keys[:slot] + (key,) + keys[slot + 1:]
            out[new] = out.get(new, zero) + coeff * c
    return T.like(out)


def contract_slot(maps, T, slot):
    """(eps⊗id) atau (id⊗eps): A⊗A -> A."""
    algebra = T.algebra
    zero = algebra.field.zero
    out = {}
    keep = 1 - slot
    for keys, coeff in T.terms.items():
        value = maps.counit(algebra.element({keys[slot]: algebra.field.one}))
        if value:
            out[keys[keep]] = out.get(keys[keep], zero) + coeff * value
    return AlgebraElement(algebra, out)


def expand_slot(maps, T, slot):
    """Terapkan koproduk pada satu slot tensor rank 2, hasil rank 3."""
    algebra = T.algebra
    zero = algebra.field.zero
    out = {}
    for keys, coeff in T.terms.items():
        image = maps.coproduct_key(keys[slot])
        for pair, c in image.terms.items():
            new = keys[:slot] + pair + keys[slot + 1:]
            out[new] = out.get(new, zero) + coeff * c
    return TensorElement(algebra, 3, out, TRIPLE_SIGNS, None)


# --- Laporan ---


@dataclass
class HopfReport:
    """Residual per nama cek; lolos jika semua nol."""

    title: str
    entries: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    def add(self, name, residual):
        self.entries[name] = residual

    @property
    def failures(self):
        return [name for name, residual in self.entries.items() if residual]

    @property
    def passed(self):
        return not self.failures

    def merge(self, other):
        self.entries.update(other.entries)
        self.notes.extend(other.notes)
        return self

    def to_dict(self):
        checks = []
        for name, residual in self.entries.items():
            entry = {"name": name, "pass": not residual}
            if residual:
                entry["residual"] = _render(residual)
            checks.append(entry)
        return {
            "title": self.title,
            "pass": self.passed,
            "failures": self.failures,
            "checks": checks,
            "notes": list(self.notes),
        }


def _render(x):
    if hasattr(x, "render"):
        return x.render()
    return scalars.render(x)


def _log_report(report):
    if report.passed:
        log.info("%s: %d cek lolos", report.title, len(report.entries))
    else:
        log.warning("%s: gagal di %s", report.title, report.failures)


# --- Sampel Elemen ---


def generator_elements(algebra):
    """(nama, elemen) untuk e_a, e_-a, K_a, K'_a."""
    out = []
    for alpha in algebra.spec.generators:
        out.append((f"e[+{alpha}]", algebra.e(alpha)))
        out.append((f"e[-{alpha}]", algebra.f(alpha)))
        out.append((f"K[{alpha}]", algebra.K(alpha)))
        out.append((f"K'[{alpha}]", algebra.Kp(alpha)))
    return out


def _letters(algebra):
    out = []
    for alpha in algebra.spec.generators:
        out.append((f"e[+{alpha}]", algebra.e(alpha)))
        out.append((f"e[-{alpha}]", algebra.f(alpha)))
    return out


def product_elements(algebra):
    """Semua hasil kali dua huruf e_(+-a)."""
    letters = _letters(algebra)
    return [(f"{n1}*{n2}", x * y) for n1, x in letters for n2, y in letters]


def random_products(algebra, rng, count=4, degree=3):
    """Hasil kali acak (seed tetap) dari `degree` huruf e_(+-a)."""
    letters = _letters(algebra)
    out = []
    for _ in range(count):
        picks = [int(i) for i in rng.integers(0, len(letters), size=degree)]
        name = "*".join(letters[i][0] for i in picks)
        value = algebra.one()
        for i in picks:
            value = value * letters[i][1]
        out.append((name, value))
    return out


# --- Cek Aksioma ---


def coassociativity(maps, x):
    delta = maps.coproduct(x)
    return expand_slot(maps, delta, 0) - expand_slot(maps, delta, 1)


def counit_residuals(maps, x):
    delta = maps.coproduct(x)
    return contract_slot(maps, delta, 0) - x, contract_slot(maps, delta, 1) - x


def antipode_residuals(maps, x):
    algebra = maps.algebra
    delta = maps.coproduct(x)
    expected = algebra.scalar(maps.counit(x))
    right = multiply_slots(map_slot(delta, 1, maps.antipode)) - expected
    left = multiply_slots(map_slot(delta, 0, maps.antipode)) - expected
    return right, left


def homomorphism_residuals(maps, x, y):
    xy = x * y
    delta = maps.coproduct(xy) - tensor_multiply(maps.coproduct(x), maps.coproduct(y))
    counit = maps.counit(xy) - maps.counit(x) * maps.counit(y)
    antipode = maps.antipode(xy) - maps.antipode(y) * maps.antipode(x)
    return delta, counit, antipode


def hopf_axioms(algebra, rng, jobs=1):
    """Koasosiatif, kounit, antipode dan sifat homomorfisma pada sampel elemen."""
    maps = HopfMaps(algebra)
    generators = generator_elements(algebra)
    products = product_elements(algebra)
    randoms = random_products(algebra, rng)

    def check(item):
        group, name, x = item
        report = HopfReport(group)
        report.add(f"coassoc {name}", coassociativity(maps, x))
        right, left = counit_residuals(maps, x)
        report.add(f"counit-left {name}", right)
        report.add(f"counit-right {name}", left)
        if group != "random":
            right, left = antipode_residuals(maps, x)
            report.add(f"antipode-right {name}", right)
            report.add(f"antipode-left {name}", left)
        return report

    items = [("generator", n, x) for n, x in generators]
    items += [("product", n, x) for n, x in products]
    items += [("random", n, x) for n, x in randoms]
    report = HopfReport("hopf-axioms")
    for part in run_blocks(check, items, jobs, label="hopf"):
        report.entries.update(part.entries)
    for n1, x in generators:
        for n2, y in generators:
            delta, counit, antipode = homomorphism_residuals(maps, x, y)
            report.add(f"hom-coproduct {n1}*{n2}", delta)
            report.add(f"hom-counit {n1}*{n2}", counit)
            report.add(f"anti-hom-antipode {n1}*{n2}", antipode)
    report.notes.append("H_a tidak dimaterialisasi; aditivitas bobot dicek lewat Delta(K)")
    _log_report(report)
    return report


# --- Kompatibilitas Ideal ---


def ideal_compatibility(algebra, ideal):
    """Delta(C) tereduksi per slot = 0, S(C) tereduksi = 0, eps(C) = 0."""
    maps = HopfMaps(algebra)
    report = HopfReport("ideal-compatibility")
    if ideal is None:
        return report
    for side, C in ideal.generators:
        x = algebra.from_free(C)
        name = C.render()
        report.add(f"coproduct {name}", maps.coproduct(x).reduced())
        report.add(f"antipode {name}", maps.antipode(x).reduced())
        report.add(f"counit {name}", maps.counit(x))
    _log_report(report)
    return report


# --- Intertwining Delta R = R Delta' ---


def _series(R, algebra, bound):
    base = with_algebra(R, algebra) if R.algebra is not algebra else R
    return base.series.with_bound(bound)


def check_intertwiner(R, K):
    """
    c12(Delta x) S - S Delta'(x) = 0 sampai grade K untuk x di e_b, e_-b, K_b, K'_b,
    dengan R = R0 S.
    """
    if R.K < K + 1:
        raise PreconditionError(f"check_intertwiner: R harus valid sampai grade {K + 1}, diterima {R.K}")
    algebra = R.algebra
    maps = HopfMaps(algebra, K + 1)
    S = _series(R, algebra, K + 1)
    report = HopfReport("intertwiner")
    for name, x in generator_elements(algebra):
        delta = maps.coproduct(x)
        residual = tensor_multiply(conjugation(delta, 0, 1), S) - tensor_multiply(S, opposite(delta))
        report.add(f"Delta R - R Delta' {name}", residual.reduced().filter_grades(None, K))
    _log_report(report)
    return report


# --- Peta Terdeformasi ---


class DeformedMaps:
    """Delta1(x) = sum C [Delta x, Z] dan S1(x) = sum C [W, S(x)]; eps1 = 0."""

    def __init__(self, D, bound):
        self.D = D
        self.maps = HopfMaps(D.algebra, bound)
        algebra = D.algebra
        self.Z = []
        self.W = []
        for pair, coeff in D.pairs:
            if not coeff:
                continue
            _, Z = driving_terms(algebra, pair, bound)
            K = algebra.cartan(pair.K_cartan)
            self.Z.append((coeff, Z))
            self.W.append((coeff, K * algebra.f(pair.rho) * algebra.e(pair.sigma)))

    def coproduct1(self, x):
        delta = self.maps.coproduct(x)
        total = self.maps.tensor({})
        for coeff, Z in self.Z:
            total = total + (tensor_multiply(delta, Z) - tensor_multiply(Z, delta)).scale(coeff)
        return total

    def antipode1(self, x):
        s = self.maps.antipode(x)
        total = self.D.algebra.zero()
        for coeff, W in self.W:
            total = total + (W * s - s * W).scale(coeff)
        return total


def deformed_hopf_check(R, D, K):
    """
    Identitas orde satu: eps1 = 0, identitas antipode pada e_a dan e_-a,
    sifat derivasi Delta1 pada hasil kali generator, dan
    Delta_eps R_eps = R_eps Delta'_eps sampai grade K.
    """
    if R.K < K + 1 or D.K < K + 1:
        raise PreconditionError(
            f"deformed_hopf_check: butuh R dan R1 >= {K + 1}, diterima {R.K} dan {D.K}"
        )
    algebra = D.algebra
    bound = K + 1
    dm = DeformedMaps(D, bound)
    maps = dm.maps
    S = _series(R, algebra, bound)
    S1 = D.series.with_bound(bound)
    report = HopfReport("deformed-hopf")

    for name, x in _letters(algebra):
        delta1 = dm.coproduct1(x)
        report.add(f"eps1 left {name}", contract_slot(maps, delta1, 0))
        report.add(f"eps1 right {name}", contract_slot(maps, delta1, 1))
        delta = maps.coproduct(x)
        identity = multiply_slots(map_slot(delta, 1, dm.antipode1))
        identity = identity + multiply_slots(map_slot(delta1, 1, maps.antipode))
        report.add(f"antipode1 {name}", identity.reduced())

    for n1, x in _letters(algebra):
        for n2, y in _letters(algebra):
            lhs = dm.coproduct1(x * y)
            rhs = tensor_multiply(dm.coproduct1(x), maps.coproduct(y))
            rhs = rhs + tensor_multiply(maps.coproduct(x), dm.coproduct1(y))
            report.add(f"derivation {n1}*{n2}", (lhs - rhs).reduced())

    for name, x in generator_elements(algebra):
        delta = maps.coproduct(x)
        delta1 = dm.coproduct1(x)
        residual = tensor_multiply(conjugation(delta1, 0, 1), S)
        residual = residual + tensor_multiply(conjugation(delta, 0, 1), S1)
        residual = residual - tensor_multiply(S1, opposite(delta))
        residual = residual - tensor_multiply(S, opposite(delta1))
        report.add(f"intertwiner1 {name}", residual.reduced().filter_grades(None, K))
    _log_report(report)
    return report
