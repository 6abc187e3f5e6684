# main.py

import sys
import logging
import argparse
from pathlib import Path

import scalars
import reports
from config import RunConfig, COMMANDS, FORMATS, setup_logging
from specfile import parse_spec
from freealg import compositions
from qdiff import (
    ConstantReport, find_constants, constants_catalogue, constants_determinant,
    determinant_factor_report, cartan_matrix, qserre_relation,
)
from quotient import build_ideal
from algebra import Algebra
from rmatrix import solve_t, assemble_R, build_R
from yangbaxter import yb_check_structural, yb_check_bruteforce
from deformation import (
    REJECTED_KINDS, find_admissible_pairs, make_pair, deform_R, verify_first_order_yb,
    check_rejected_types,
)
from hopf import hopf_axioms, check_intertwiner, ideal_compatibility, deformed_hopf_check
from errors import QForgeError, ObstructionDetected, PreconditionError, SpecError

log = logging.getLogger("APP")

EXIT_PASS = 0
EXIT_FAIL = 1


# --- Argumen CLI ---


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qforge",
        description="Aljabar komputer eksak untuk matriks R grup kuantum umum",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--spec", required=True, help="file JSON atau preset:<nama>")
    parser.add_argument("--grade", default=2, help="truncation K")
    parser.add_argument("--quotient", action="store_true", help="bangun ideal konstanta saat obstruksi")
    parser.add_argument("--format", choices=FORMATS, default=None)
    parser.add_argument("--out", default=None)
    parser.add_argument("--seed", default=None)
    parser.add_argument("--jobs", default=None)
    parser.add_argument("--kind", default="section3", help="jenis turunan untuk constants/determinant")
    parser.add_argument("--pair", default=None, help="pasangan sigma,rho")
    parser.add_argument("--multidegree", default=None, help="mis. 1,1,0")
    parser.add_argument("--factor-check", action="store_true")
    parser.add_argument("--log-level", default=None)
    return parser


# --- Perintah ---


def _constants(config, spec):
    if config.multidegree is not None:
        items = [find_constants(config.kind, config.multidegree, spec)]
    else:
        items = constants_catalogue(config.kind, config.grade, spec, config.jobs)
    payload = {"kind": config.kind, "reports": [item.to_dict() for item in items]}
    latex = reports.latex_constants([(item.multidegree, item.basis) for item in items])
    return payload, latex, EXIT_PASS


def _determinant(config, spec):
    if config.multidegree is not None:
        degrees = [config.multidegree]
    else:
        degrees = compositions(config.grade, spec.rank)
    dets = [(d, constants_determinant(d, spec, config.kind)) for d in degrees]
    values = [{"multidegree": list(d), "determinant": scalars.render(det)} for d, det in dets]
    payload = {"kind": config.kind, "determinants": values}
    status = EXIT_PASS
    if config.factor_check:
        factor = determinant_factor_report(spec, config.seed, config.kind)
        payload["factor_check"] = factor.to_dict()
        if not factor.passed:
            status = EXIT_FAIL
    latex = "\n\n".join(
        f"$\\det_{{({','.join(map(str, d))})}} = {scalars.to_latex(det)}$" for d, det in dets
    )
    return payload, latex, status


def _serre(config, spec):
    matrix = cartan_matrix(spec, config.kmax)
    relations = []
    for a, alpha in enumerate(spec.generators):
        for b, beta in enumerate(spec.generators):
            entry = matrix[a][b]
            if alpha == beta or entry is None:
                continue
            k = 1 - entry
            try:
                relation = qserre_relation(alpha, beta, k, spec)
            except PreconditionError as exc:
                relations.append({"alpha": alpha, "beta": beta, "k": k, "note": str(exc)})
                continue
            relations.append({
                "alpha": alpha, "beta": beta, "k": k,
                "element": relation.element.render(),
                "constant": relation.constant,
            })
    payload = {"cartan_matrix": matrix, "kmax": config.kmax, "relations": relations}
    return payload, None, EXIT_PASS


def _ideal(config, spec, grade):
    if not config.quotient or grade < 2:
        return None
    return build_ideal(spec, grade)


def _rmatrix(config, spec):
    ideal = _ideal(config, spec, config.grade)
    t = solve_t(spec, config.grade, ideal, config.jobs)
    R = assemble_R(t, config.grade)
    return R.to_dict(), reports.latex_rmatrix(R), EXIT_PASS


def _yb_check(config, spec):
    K = config.grade
    ideal = _ideal(config, spec, K)
    R = build_R(spec, K, ideal, config.jobs)
    structural = yb_check_structural(R, K, K, config.jobs)
    brute = yb_check_bruteforce(R, K)
    agree = (structural.passed == brute.passed
             and structural.failing_grades == brute.failing_grades)
    payload = {
        "K": K,
        "structural": structural.to_dict(),
        "bruteforce": brute.to_dict(),
        "agree": agree,
    }
    ok = structural.passed and brute.passed
    return payload, None, EXIT_PASS if ok else EXIT_FAIL


def _pairs(config, spec):
    pairs = find_admissible_pairs(spec)
    payload = {"admissible": [pair.to_dict() for pair in pairs]}
    if config.pair is not None:
        sigma, rho = config.pair
        payload["rejected_types"] = [
            check_rejected_types(spec, kind, sigma, rho).to_dict() for kind in REJECTED_KINDS
        ]
    return payload, None, EXIT_PASS


def _choose_pair(config, spec):
    if config.pair is not None:
        return make_pair(spec, *config.pair)
    pairs = [pair for pair in find_admissible_pairs(spec) if not pair.degenerate]
    if not pairs:
        raise PreconditionError("tidak ada pasangan admissible untuk spesifikasi ini")
    return pairs[0]


def _deform(config, spec):
    K = config.grade
    pair = _choose_pair(config, spec)
    ideal = _ideal(config, spec, K + 1)
    R = build_R(spec, K + 1, ideal, config.jobs)
    D = deform_R(R, pair, K)
    report = verify_first_order_yb(R, D, K, config.jobs)
    payload = {"deformation": D.to_dict(), "first_order_yb": report.to_dict()}
    return payload, None, EXIT_PASS if report.passed else EXIT_FAIL


def _hopf_check(config, spec):
    K = config.grade
    ideal = _ideal(config, spec, K + 2)
    algebra = Algebra(spec, ideal)
    checks = [hopf_axioms(algebra, scalars.make_rng(config.seed), config.jobs)]
    R = build_R(spec, K + 2, ideal, config.jobs)
    checks.append(check_intertwiner(R, K))
    if ideal is not None:
        checks.append(ideal_compatibility(R.algebra, ideal))
    pairs = [pair for pair in find_admissible_pairs(spec) if not pair.degenerate]
    if pairs:
        D = deform_R(R, pairs[0], K + 1)
        checks.append(deformed_hopf_check(R, D, K))
    payload = {"K": K, "checks": [report.to_dict() for report in checks]}
    ok = all(report.passed for report in checks)
    return payload, None, EXIT_PASS if ok else EXIT_FAIL


HANDLERS = {
    "constants": _constants,
    "determinant": _determinant,
    "serre": _serre,
    "rmatrix": _rmatrix,
    "yb-check": _yb_check,
    "pairs": _pairs,
    "deform": _deform,
    "hopf-check": _hopf_check,
}


def _obstruction_payload(exc, spec):
    report = ConstantReport(exc.multidegree, exc.constants, None, len(spec.words(exc.multidegree)), "left_minus")
    return {
        "obstruction": {
            "grade": exc.grade,
            "multidegree": list(exc.multidegree),
            "inconsistent": exc.inconsistent,
            "message": str(exc),
            "constants": report.to_dict(),
        }
    }


def _emit(config, text):
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
        log.info("Output ditulis ke %s", config.out)
    else:
        sys.stdout.write(text)


def run(config):
    """Jalankan satu perintah; mengembalikan kode keluar 0/1/2/3."""
    try:
        spec = parse_spec(config.spec_path)
    except QForgeError as exc:
        log.error("Spesifikasi gagal dibaca: %s", exc)
        return exc.exit_code
    header = {"command": config.command, "spec": spec.describe(), "seed": config.seed}
    try:
        payload, latex, status = HANDLERS[config.command](config, spec)
    except ObstructionDetected as exc:
        log.error("%s", exc)
        _emit(config, reports.render({**header, **_obstruction_payload(exc, spec)}, config.fmt))
        return exc.exit_code
    except QForgeError as exc:
        log.error("%s gagal: %s", config.command, exc)
        return exc.exit_code
    _emit(config, reports.render({**header, **payload}, config.fmt, latex))
    log.info("%s selesai dengan status %d", config.command, status)
    return status


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        config = RunConfig.from_args(args)
    except SpecError as exc:
        log.error("%s", exc)
        return exc.exit_code
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
