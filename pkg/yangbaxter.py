# yangbaxter.py

import logging
from dataclasses import dataclass, field as dc_field

from algebra import embed, chain_product
from freealg import FreeElement, POSITIVE, NEGATIVE
from quotient import reduce as reduce_free
from rmatrix import mirror_t, grade_words
from errors import PreconditionError
from worker import run_blocks

log = logging.getLogger("YB")

TRIPLE_SIGNS = (-1, 0, 1)


# --- Laporan ---


@dataclass
class YBReport:
    """
    Residual per (l, n, kunci slot 1, kunci slot 3) berupa AlgebraElement slot
    tengah. Hanya residual tak nol yang disimpan.
    """

    method: str
    checked: list
    residuals: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return not self.residuals

    @property
    def failing_grades(self):
        return sorted({(key[0], key[1]) for key in self.residuals})

    def first_residual(self, grade):
        for key in sorted(self.residuals, key=repr):
            if (key[0], key[1]) == tuple(grade):
                return key, self.residuals[key]
        return None

    def to_dict(self):
        grades = []
        failing = set(self.failing_grades)
        for grade in self.checked:
            entry = {"grade": list(grade), "pass": grade not in failing}
            found = self.first_residual(grade)
            if found is not None:
                key, residual = found
                entry["first_residual"] = {
                    "slot1": _render_slot(key[2]),
                    "slot3": _render_slot(key[3]),
                    "middle": residual.render(),
                }
            grades.append(entry)
        return {
            "method": self.method,
            "pass": self.passed,
            "failing_grades": [list(g) for g in self.failing_grades],
            "grades": grades,
            "notes": list(self.notes),
        }


def _render_slot(key):
    if isinstance(key, tuple) and len(key) == 3 and isinstance(key[0], tuple):
        neg, cartan, pos = key
        return {"neg": list(neg), "cartan": list(cartan), "pos": list(pos)}
    return list(key)


# --- Cek Struktural ---


def _products(spec, ideal, side, la, lb):
    """
    Untuk kata basis a (panjang la) dan b (panjang lb): koefisien kata basis
    target di reduce(e_a e_b). Dikembalikan sebagai target -> [(a, b, koef)].
    """
    field = spec.field
    table = {}
    for a in grade_words(spec, ideal, side, la):
        for b in grade_words(spec, ideal, side, lb):
            image = reduce_free(FreeElement.word(side, field, a + b), ideal)
            for target, coeff in image.terms.items():
                table.setdefault(target, []).append((a, b, coeff))
    return table


class _Structural:
    """Data bersama untuk jumlah-P: t_u sebagai elemen A+, t^g sebagai elemen A-."""

    def __init__(self, R):
        self.R = R
        self.spec = R.spec
        self.ideal = R.ideal
        self.algebra = R.algebra
        algebra = self.algebra
        self.lower = {u: algebra.from_free(R.t.t(u)) for u in R.t.table}
        self.upper = {g: algebra.from_free(x) for g, x in mirror_t(R.t).items()}
        self._product_tables = {}

    def products(self, side, la, lb):
        key = (side, la, lb)
        if key not in self._product_tables:
            self._product_tables[key] = _products(self.spec, self.ideal, side, la, lb)
        return self._product_tables[key]

    def s(self, u):
        return self.lower.get(u, self.algebra.zero())

    def t_upper(self, g):
        return self.upper.get(g, self.algebra.zero())

    def residual(self, l, n, alpha, Gamma):
        algebra = self.algebra
        spec = self.spec
        R = self.R
        total = algebra.zero()
        for m in range(min(l, n) + 1):
            # R12 R13 R23: s_u K'^(-deg g) t^(g')
            for u, v, c1 in self.products(NEGATIVE, l - m, m).get(alpha, ()):
                for g, g2, c2 in self.products(POSITIVE, m, n - m).get(Gamma, ()):
                    coeff = R.t.coefficient(v, g)
                    if not coeff:
                        continue
                    kp = algebra.cartan(algebra.kp_of_weight(spec.multidegree(g), -1))
                    total = total + (self.s(u) * kp * self.t_upper(g2)).scale(c1 * c2 * coeff)
            # R23 R13 R12: t^(g') K^(deg g) s_u
            for v, u, c1 in self.products(NEGATIVE, m, l - m).get(alpha, ()):
                for g2, g, c2 in self.products(POSITIVE, n - m, m).get(Gamma, ()):
                    coeff = R.t.coefficient(v, g)
                    if not coeff:
                        continue
                    k = algebra.cartan(algebra.k_of_weight(spec.multidegree(g), 1))
                    total = total - (self.t_upper(g2) * k * self.s(u)).scale(c1 * c2 * coeff)
        return algebra.reduce(total)


def yb_check_structural(R, lmax, nmax, jobs=1):
    """
    Untuk setiap (l, n) dan kata basis alpha (slot 1), Gamma (slot 3): jumlah
    atas m = 0..min(l, n) dari kedua sisi relasi, diluruskan ke urutan normal
    di slot tengah.
    """
    if R.K < max(lmax, nmax):
        raise PreconditionError(
            f"yb_check_structural: R hanya sampai grade {R.K}, diminta ({lmax}, {nmax})"
        )
    data = _Structural(R)
    grades = [(l, n) for l in range(lmax + 1) for n in range(nmax + 1)]

    def check_grade(grade):
        l, n = grade
        found = {}
        for alpha in grade_words(R.spec, R.ideal, NEGATIVE, l):
            for Gamma in grade_words(R.spec, R.ideal, POSITIVE, n):
                residual = data.residual(l, n, alpha, Gamma)
                if residual:
                    found[(l, n, alpha, Gamma)] = residual
        log.debug("Grade (%d,%d): %d residual tak nol", l, n, len(found))
        return found

    # Tabel produk diisi dulu supaya thread hanya membaca
    for l, n in grades:
        for m in range(min(l, n) + 1):
            data.products(NEGATIVE, l - m, m)
            data.products(NEGATIVE, m, l - m)
            data.products(POSITIVE, m, n - m)
            data.products(POSITIVE, n - m, m)

    report = YBReport("structural", grades)
    for found in run_blocks(check_grade, grades, jobs, label="yb"):
        report.residuals.update(found)
    _log_report(report)
    return report


# --- Cek Brute-Force ---


def triple_factors(series, bound, order):
    """Tanam seri R ke slot (i, j) tensor rank 3 sesuai urutan faktor."""
    return [(pair, embed(series, pair, 3, TRIPLE_SIGNS, bound)) for pair in order]


LEFT_ORDER = ((0, 1), (0, 2), (1, 2))
RIGHT_ORDER = ((1, 2), (0, 2), (0, 1))


def residual_report(method, residual, K, low=0):
    """Kelompokkan residual rank 3 per (l, n, kunci slot 1, kunci slot 3)."""
    grades = [(l, n) for l in range(low, K + 1) for n in range(low, K + 1)]
    grouped = {}
    algebra = residual.algebra
    for keys, coeff in residual.terms.items():
        l, n = residual.grade_of(keys)
        if not (low <= l <= K and low <= n <= K):
            continue
        grouped.setdefault((l, n, keys[0], keys[2]), {})[keys[1]] = coeff
    report = YBReport(method, grades)
    for key, terms in grouped.items():
        middle = algebra.element(terms)
        if middle:
            report.residuals[key] = middle
    return report


def yb_check_bruteforce(R, K):
    """R12 R13 R23 - R23 R13 R12 dengan konjugasi R0, dihitung per slot sampai grade K."""
    if K > R.K:
        raise PreconditionError(f"yb_check_bruteforce: R hanya sampai grade {R.K}, diminta {K}")
    _, left = chain_product(triple_factors(R.series, K, LEFT_ORDER))
    _, right = chain_product(triple_factors(R.series, K, RIGHT_ORDER))
    residual = (left - right).reduced()
    report = residual_report("bruteforce", residual, K)
    _log_report(report)
    return report


def _log_report(report):
    if report.passed:
        log.info("Yang-Baxter (%s): lolos di %d pasangan grade", report.method, len(report.checked))
    else:
        log.warning("Yang-Baxter (%s): gagal di %s", report.method, report.failing_grades)
