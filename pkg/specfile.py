# specfile.py

import json
import logging
from pathlib import Path

from sympy import Matrix, Rational
from sympy.liealgebras.cartan_matrix import CartanMatrix

import scalars
from freealg import AlgebraSpec, CartanData
from errors import SpecError

log = logging.getLogger("SPEC")

# --- Skema File Spesifikasi ---
# JSON: generators, qmatrix {"i,j": string atau "symbolic"}, cartan, preset,
# specializations [{map, extension, label}], relations, name.

TOP_KEYS = {"name", "generators", "qmatrix", "cartan", "preset", "specializations", "relations"}
CARTAN_KEYS = {"rank", "H", "phi", "base"}
PRESET_KEYS = {"type", "cartan_matrix", "symmetrizers", "twist", "base"}
SPECIALIZATION_KEYS = {"map", "extension", "label"}

SYMBOLIC = "symbolic"

PRESETS = {
    "generic-2": {"name": "generic-2", "generators": [1, 2]},
    "generic-3": {"name": "generic-3", "generators": [1, 2, 3]},
    "generic-4": {"name": "generic-4", "generators": [1, 2, 3, 4]},
    "minus-one": {"name": "minus-one", "generators": [1], "qmatrix": {"1,1": "-1"}},
    "sigma-one": {
        "name": "sigma-one",
        "generators": [1, 2],
        "specializations": [{"map": {"q[2,1]": "q[1,2]^-1"}, "label": "sigma12=1"}],
    },
    "cube-root": {
        "name": "cube-root",
        "generators": [1],
        "specializations": [{
            "map": {"q[1,1]": "(-1+sqrt(-3))/2"},
            "extension": ["sqrt(-3)"],
            "label": "1+q11+q11^2=0",
        }],
    },
    "sl3": {
        "name": "sl3",
        "preset": {"type": "single-q", "cartan_matrix": "A2", "symmetrizers": [1, 1]},
    },
    "sl3-twisted": {
        "name": "sl3-twisted",
        "preset": {
            "type": "single-q",
            "cartan_matrix": "A2",
            "symmetrizers": [1, 1],
            "twist": [[0, -1], [1, 0]],
        },
    },
}


def _check_keys(where, data, allowed):
    if not isinstance(data, dict):
        raise SpecError(f"{where}: harus objek JSON")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise SpecError(f"{where}: field tidak dikenal {unknown}")


def _generators(data):
    raw = data.get("generators")
    if not isinstance(raw, list) or not raw:
        raise SpecError("generators: harus list bilangan bulat yang tidak kosong")
    generators = []
    for item in raw:
        if isinstance(item, bool) or not isinstance(item, int) or item < 1:
            raise SpecError(f"generators: indeks {item!r} bukan bilangan bulat positif")
        generators.append(item)
    if len(set(generators)) != len(generators):
        raise SpecError("generators: indeks ganda")
    return tuple(sorted(generators))


def _qkey(text, generators):
    try:
        a, b = (int(part) for part in str(text).split(","))
    except ValueError:
        raise SpecError(f"qmatrix: kunci {text!r} harus berbentuk 'i,j'")
    if a not in generators or b not in generators:
        raise SpecError(f"qmatrix: kunci {text!r} memakai generator di luar N")
    return a, b


def _rational(where, value):
    try:
        return Rational(str(value))
    except Exception:
        raise SpecError(f"{where}: {value!r} bukan bilangan rasional")


# --- Data Cartan dan Preset ---


def _cartan_data(raw, generators):
    _check_keys("cartan", raw, CARTAN_KEYS)
    try:
        rank = int(raw["rank"])
        H = {int(key): tuple(_rational(f"cartan.H[{key}]", v) for v in values) for key, values in raw["H"].items()}
        phi = tuple(tuple(_rational("cartan.phi", v) for v in row) for row in raw["phi"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise SpecError(f"cartan: field wajib rank, H, phi ({exc})")
    data = CartanData(rank, H, phi, raw.get("base", "q"))
    data.check(generators)
    return data


def _square(where, rows, n):
    if len(rows) != n or any(len(row) != n for row in rows):
        raise SpecError(f"{where}: harus matriks {n}x{n}")


def single_q_cartan(raw):
    """
    q_ab = q^(D((a,b) + tau_ab)/2) dengan (a,b) = d_a A_ab. Hasilnya CartanData
    dengan H identitas dan phi = ((a,b) + tau)/2.
    """
    _check_keys("preset", raw, PRESET_KEYS)
    if raw.get("type") != "single-q":
        raise SpecError(f"preset.type: hanya 'single-q' yang didukung, diterima {raw.get('type')!r}")
    cm = raw.get("cartan_matrix")
    if isinstance(cm, str):
        try:
            A = CartanMatrix(cm)
        except Exception as exc:
            raise SpecError(f"preset.cartan_matrix: tipe {cm!r} tidak dikenal ({exc})")
    elif isinstance(cm, list):
        A = Matrix(cm)
    else:
        raise SpecError("preset.cartan_matrix: harus nama tipe (mis. 'A2') atau list baris")
    n = A.rows
    _square("preset.cartan_matrix", A.tolist(), n)
    d = [_rational("preset.symmetrizers", x) for x in raw.get("symmetrizers", [1] * n)]
    if len(d) != n:
        raise SpecError(f"preset.symmetrizers: harus {n} nilai")
    twist = raw.get("twist", [[0] * n for _ in range(n)])
    _square("preset.twist", twist, n)
    tau = [[_rational("preset.twist", x) for x in row] for row in twist]
    pairing = [[d[a] * A[a, b] for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            if pairing[a][b] != pairing[b][a]:
                raise SpecError("preset: d_a A_ab tidak simetris")
            if tau[a][b] != -tau[b][a]:
                raise SpecError("preset.twist: harus antisimetris")
    phi = tuple(tuple((pairing[a][b] + tau[a][b]) / 2 for b in range(n)) for a in range(n))
    H = {a + 1: tuple(Rational(int(a == b)) for b in range(n)) for a in range(n)}
    return CartanData(n, H, phi, raw.get("base", "q"))


# --- Parser ---


def spec_from_dict(data, name=""):
    """Bangun AlgebraSpec tervalidasi dari dict hasil JSON (atau preset)."""
    _check_keys("spec", data, TOP_KEYS)
    name = data.get("name", name)
    cartan = None
    if "preset" in data:
        cartan = single_q_cartan(data["preset"])
        generators = tuple(range(1, cartan.rank + 1))
        if "generators" in data and _generators(data) != generators:
            raise SpecError(f"generators: preset menentukan N = {list(generators)}")
    else:
        generators = _generators(data)
    if "cartan" in data:
        if cartan is not None:
            raise SpecError("cartan: tidak boleh bersama preset")
        cartan = _cartan_data(data["cartan"], generators)

    raw_q = data.get("qmatrix", {})
    if not isinstance(raw_q, dict):
        raise SpecError("qmatrix: harus objek {'i,j': string}")
    entries = {}
    for key, value in raw_q.items():
        a, b = _qkey(key, generators)
        if not isinstance(value, str):
            raise SpecError(f"qmatrix[{key}]: harus string, diterima {value!r}")
        entries[(a, b)] = value.strip()

    names = set()
    if cartan is not None:
        names.add(cartan.base)
    for a in generators:
        for b in generators:
            value = entries.get((a, b))
            if value is None:
                if cartan is None:
                    names.add(scalars.symbol_name(a, b))
            elif value == SYMBOLIC:
                names.add(scalars.symbol_name(a, b))
            else:
                try:
                    names.update(scalars.free_symbol_names(value))
                except SpecError as exc:
                    raise SpecError(f"qmatrix[{a},{b}]: {exc}")
    field = scalars.make_field(names or {"q"})

    derived = {}
    if cartan is not None:
        base = scalars.gen(field, cartan.base)
        derived = {key: base ** exp for key, exp in cartan.exponents(generators).items()}
    qmatrix = {}
    for a in generators:
        for b in generators:
            value = entries.get((a, b))
            if value is None and cartan is not None:
                qmatrix[(a, b)] = derived[(a, b)]
            elif value is None or value == SYMBOLIC:
                qmatrix[(a, b)] = scalars.gen(field, scalars.symbol_name(a, b))
            else:
                try:
                    qmatrix[(a, b)] = scalars.parse_scalar(value, field)
                except SpecError as exc:
                    raise SpecError(f"qmatrix[{a},{b}]: {exc}")

    try:
        relations = tuple(tuple(int(x) for x in row) for row in data.get("relations", ()))
    except (TypeError, ValueError):
        raise SpecError("relations: harus list vektor eksponen bilangan bulat")
    for row in relations:
        if len(row) != 2 * len(generators):
            raise SpecError(f"relations: vektor {list(row)} harus panjang {2 * len(generators)}")
    spec = AlgebraSpec(generators, field, qmatrix, cartan_data=cartan, relations=relations, name=name)
    spec.validate()

    for index, raw in enumerate(data.get("specializations", ())):
        _check_keys(f"specializations[{index}]", raw, SPECIALIZATION_KEYS)
        mapping = raw.get("map")
        if not isinstance(mapping, dict) or not mapping:
            raise SpecError(f"specializations[{index}].map: harus objek simbol -> nilai")
        s = scalars.Specialization.from_strings(
            spec.field, mapping, tuple(raw.get("extension", ())), raw.get("label", ""),
        )
        spec = spec.specialize(s)
        log.info("Spesialisasi %s diterapkan", s.label)
    if spec.specializations:
        spec.validate()
    log.info("Spesifikasi %s: N = %s, field %s", name or "-", list(generators), scalars.render_field(spec.field))
    return spec


def parse_spec(source):
    """File JSON, atau 'preset:<nama>' untuk preset bawaan."""
    source = str(source)
    if source.startswith("preset:"):
        key = source.split(":", 1)[1]
        if key not in PRESETS:
            raise SpecError(f"preset tidak dikenal: {key!r} (tersedia: {sorted(PRESETS)})")
        return spec_from_dict(PRESETS[key], key)
    path = Path(source)
    if not path.is_file():
        raise SpecError(f"file spesifikasi tidak ditemukan: {source}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecError(f"{source}: JSON tidak valid ({exc})")
    return spec_from_dict(data, path.stem)
