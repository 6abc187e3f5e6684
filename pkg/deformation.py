# deformation.py

import logging
from dataclasses import dataclass, field as dc_field

import scalars
from algebra import Algebra, TensorElement, tensor_of, tensor_multiply, conjugation, chain_product, embed
from rmatrix import with_algebra
from yangbaxter import TRIPLE_SIGNS, LEFT_ORDER, RIGHT_ORDER, residual_report
from errors import PreconditionError
from worker import run_blocks

log = logging.getLogger("DEFORM")

PAIR_SIGNS = (-1, 1)

# --- Pasangan Admissible ---


@dataclass(frozen=True)
class AdmissiblePair:
    """
    (sigma, rho) dengan q_{b,rho} q_{sigma,b} = 1 untuk semua b. K := K'_rho,
    disimpan sebagai vektor Cartan (eksponen K lalu K').
    """

    sigma: int
    rho: int
    K_cartan: tuple
    degenerate: bool = False

    def relation(self, rank, index):
        """Vektor relasi K'_rho K_sigma = 1."""
        v = [0] * (2 * rank)
        v[index(self.sigma)] += 1
        v[rank + index(self.rho)] += 1
        return tuple(v)

    def to_dict(self):
        return {
            "sigma": self.sigma,
            "rho": self.rho,
            "K": list(self.K_cartan),
            "degenerate": self.degenerate,
        }


def pair_conditions(spec, sigma, rho):
    """Nilai q_{b,rho} q_{sigma,b} per generator b."""
    return {beta: spec.q(beta, rho) * spec.q(sigma, beta) for beta in spec.generators}


def is_admissible(spec, sigma, rho):
    one = spec.field.one
    return all(scalars.same(value, one) for value in pair_conditions(spec, sigma, rho).values())


def make_pair(spec, sigma, rho):
    v = [0] * (2 * spec.rank)
    v[spec.rank + spec.index(rho)] = 1
    return AdmissiblePair(sigma, rho, tuple(v), degenerate=(sigma == rho))


def find_admissible_pairs(spec):
    pairs = []
    for sigma in spec.generators:
        for rho in spec.generators:
            if not is_admissible(spec, sigma, rho):
                continue
            pair = make_pair(spec, sigma, rho)
            if pair.degenerate:
                log.warning(
                    "Pasangan (%s, %s): sigma = rho dengan q[b,rho]q[rho,b] = 1, "
                    "generator degenerate", sigma, rho,
                )
            pairs.append(pair)
    log.info("%d pasangan admissible ditemukan", len(pairs))
    return pairs


# --- R1 ---


@dataclass
class DeformedR:
    """
    Deformasi orde satu R + eps R1 dengan R1 = R0 * series. Seri ini disimpan
    tanpa prefiks R0, terpotong di grade K.
    """

    base: object
    pairs: list
    series: TensorElement
    K: int
    algebra: Algebra
    forced: bool = False
    notes: list = dc_field(default_factory=list)

    def components(self):
        return self.series.grade_components()

    def lowest(self):
        return self.series.filter_grades(-1, -1)

    def to_dict(self):
        return {
            "base": {"K": self.base.K, "spec": self.base.spec.name},
            "K": self.K,
            "forced": self.forced,
            "pairs": [
                dict(pair.to_dict(), coeff=scalars.render(coeff)) for pair, coeff in self.pairs
            ],
            "R1": [
                {"slots": [self.algebra.render_key(k) for k in keys], "coeff": scalars.render(coeff)}
                for keys, coeff in self.series.items()
            ],
            "notes": list(self.notes),
        }


def driving_terms(algebra, pair, bound):
    """X = K e_sigma ⊗ K e_-rho dan Y0 = K e_-rho ⊗ K e_sigma dengan K = K'_rho."""
    K = algebra.cartan(pair.K_cartan)
    X = tensor_of([K * algebra.e(pair.sigma), K * algebra.f(pair.rho)], PAIR_SIGNS, bound)
    Y0 = tensor_of([K * algebra.f(pair.rho), K * algebra.e(pair.sigma)], PAIR_SIGNS, bound)
    return X, Y0


def _r1_series(series, algebra, pair, K):
    """R(X) - (Y0)R = R0 (S X - c12(Y0) S)."""
    X, Y0 = driving_terms(algebra, pair, K + 1)
    Y = conjugation(Y0, 0, 1)
    S = series.with_bound(K + 1)
    return (tensor_multiply(S, X) - tensor_multiply(Y, S)).with_bound(K)


def _deformed_algebra(R, pairs, force):
    spec = R.spec
    relations = []
    for pair in pairs:
        if not is_admissible(spec, pair.sigma, pair.rho):
            if not force:
                raise PreconditionError(f"pasangan ({pair.sigma}, {pair.rho}) tidak admissible")
            log.warning("Pasangan (%s, %s) tidak admissible, dipaksa", pair.sigma, pair.rho)
            continue
        relation = pair.relation(spec.rank, spec.index)
        if relation not in relations:
            relations.append(relation)
    if not relations:
        return R.algebra
    return Algebra(spec.with_cartan_relations(relations), R.ideal)


def deform_R(R, pair, K, coeff=1, force=False):
    """R1 untuk satu pasangan; koefisien normalisasi 1 pada suku penggerak."""
    return combine_deformations(R, [(pair, coeff)], K, force)


def combine_deformations(R, terms, K, force=False):
    """R1 = sum C_(sigma,rho) R1^(sigma,rho) di atas aljabar dengan semua relasi Cartan."""
    if R.K < K + 1:
        raise PreconditionError(f"deform_R: R harus terpotong >= {K + 1}, diterima {R.K}")
    pairs = [pair for pair, _ in terms]
    algebra = _deformed_algebra(R, pairs, force)
    base = with_algebra(R, algebra) if algebra is not R.algebra else R
    field = algebra.field
    total = TensorElement(algebra, 2, {}, PAIR_SIGNS, K)
    scaled = []
    for pair, coeff in terms:
        coeff = field(coeff)
        scaled.append((pair, coeff))
        if not coeff:
            continue
        total = total + _r1_series(base.series, algebra, pair, K).scale(coeff)
    forced = force and any(not is_admissible(R.spec, p.sigma, p.rho) for p in pairs)
    D = DeformedR(base, scaled, total, K, algebra, forced)
    log.info("R1 dihitung sampai grade %d: %d suku", K, len(total.terms))
    return D


# --- Yang-Baxter Orde Satu ---


def verify_first_order_yb(R, D, K, jobs=1):
    """
    Jumlah enam suku: (R1)12 R13 R23 + R12 (R1)13 R23 + R12 R13 (R1)23
    dikurangi R23 R13 (R1)12 + R23 (R1)13 R12 + (R1)23 R13 R12.
    """
    if R.K < K + 1 or D.K < K:
        raise PreconditionError(
            f"verify_first_order_yb: butuh R >= {K + 1} dan R1 >= {K}, diterima {R.K} dan {D.K}"
        )
    base = with_algebra(R, D.algebra) if R.algebra is not D.algebra else R
    bound = K + 1
    r = {pair: embed(base.series, pair, 3, TRIPLE_SIGNS, bound) for pair in LEFT_ORDER}
    r1 = {pair: embed(D.series, pair, 3, TRIPLE_SIGNS, bound) for pair in LEFT_ORDER}

    def chain(order, deformed):
        return [(pair, r1[pair] if pair == deformed else r[pair]) for pair in order]

    plans = [(1, chain(LEFT_ORDER, pair)) for pair in LEFT_ORDER]
    plans += [(-1, chain(RIGHT_ORDER, pair)) for pair in RIGHT_ORDER]

    def compute(plan):
        sign, factors = plan
        return sign, chain_product(factors)[1]

    residual = None
    for sign, product in run_blocks(compute, plans, jobs, label="orde-satu"):
        term = product if sign > 0 else -product
        residual = term if residual is None else residual + term
    residual = residual.reduced().filter_grades(-1, K)
    report = residual_report("first-order", residual, K, low=-1)
    if D.forced:
        report.notes.append("pasangan tidak admissible dipaksa")
    if report.passed:
        log.info("Yang-Baxter orde satu lolos sampai grade %d", K)
    else:
        log.warning("Yang-Baxter orde satu gagal di %s", report.failing_grades)
    return report


# --- Tipe yang Ditolak ---


@dataclass
class Condition:
    name: str
    beta: int
    expression: str
    holds: bool
    implied: bool = False


@dataclass
class RejectedTypeReport:
    kind: str
    sigma: int
    rho: int
    conditions: list

    @property
    def feasible(self):
        return all(c.holds for c in self.conditions if not c.implied)

    @property
    def violated(self):
        return [c for c in self.conditions if not c.holds]

    def to_dict(self):
        return {
            "kind": self.kind,
            "sigma": self.sigma,
            "rho": self.rho,
            "feasible": self.feasible,
            "conditions": [
                {
                    "name": c.name, "beta": c.beta, "expression": c.expression,
                    "holds": c.holds, "implied": c.implied,
                }
                for c in self.conditions
            ],
        }


REJECTED_KINDS = ("minus-plus", "plus-plus", "minus-minus")


def _rules(kind):
    """(nama, fungsi nilai, teks, tersirat). Setiap nilai harus sama dengan 1."""
    if kind == "minus-plus":
        return [
            ("left-match", lambda q, s, r, b: q(s, b) / q(r, b), "q[{s},{b}]/q[{r},{b}]", False),
            ("right-match", lambda q, s, r, b: q(b, s) / q(b, r), "q[{b},{s}]/q[{b},{r}]", False),
            ("cross-inverse", lambda q, s, r, b: q(r, b) * q(b, s), "q[{r},{b}]*q[{b},{s}]", False),
            ("rho-quommute", lambda q, s, r, b: q(r, b) * q(b, r), "q[{r},{b}]*q[{b},{r}]", True),
            ("sigma-quommute", lambda q, s, r, b: q(s, b) * q(b, s), "q[{s},{b}]*q[{b},{s}]", True),
        ]
    if kind == "plus-plus":
        return [
            ("left-product", lambda q, s, r, b: q(s, b) * q(r, b), "q[{s},{b}]*q[{r},{b}]", False),
            ("grade-0-1", lambda q, s, r, b: q(b, s) * q(b, r), "q[{b},{s}]*q[{b},{r}]", False),
        ]
    if kind == "minus-minus":
        return [
            ("right-product", lambda q, s, r, b: q(b, s) * q(b, r), "q[{b},{s}]*q[{b},{r}]", False),
            ("left-product", lambda q, s, r, b: q(s, b) * q(r, b), "q[{s},{b}]*q[{r},{b}]", False),
        ]
    raise PreconditionError(f"jenis deformasi tidak dikenal: {kind!r}")


def check_rejected_types(spec, kind, sigma, rho):
    """
    Syarat perlu (tingkat pairing) agar suku penggerak jenis ini bisa dipakai.
    Syarat tersirat dilaporkan tetapi tidak ikut menentukan kelayakan.
    """
    one = spec.field.one
    conditions = []
    for name, value, text, implied in _rules(kind):
        for beta in spec.generators:
            expression = text.format(s=sigma, r=rho, b=beta)
            holds = scalars.same(value(spec.q, sigma, rho, beta), one)
            conditions.append(Condition(name, beta, expression, holds, implied))
    report = RejectedTypeReport(kind, sigma, rho, conditions)
    log.info(
        "Tipe %s (%s, %s): %d syarat gagal%s", kind, sigma, rho, len(report.violated),
        "" if report.feasible else ", suku penggerak ditolak",
    )
    return report
