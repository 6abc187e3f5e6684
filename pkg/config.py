# config.py

import os
import logging
from dataclasses import dataclass
from dotenv import load_dotenv

from errors import SpecError

# --- Konfigurasi dan Inisialisasi ---
load_dotenv()

DEFAULT_JOBS = os.getenv("QFORGE_JOBS", "1")
DEFAULT_SEED = os.getenv("QFORGE_SEED", "20240601")
DEFAULT_FORMAT = os.getenv("QFORGE_FORMAT", "json")
DEFAULT_LOG_LEVEL = os.getenv("QFORGE_LOG_LEVEL", "INFO")
DEFAULT_KMAX = os.getenv("QFORGE_KMAX", "6")

FORMATS = ("json", "latex", "text")
COMMANDS = (
    "constants", "determinant", "serre", "rmatrix",
    "yb-check", "pairs", "deform", "hopf-check",
)


def _as_int(name, value, minimum=None):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise SpecError(f"{name}: harus bilangan bulat, diterima {value!r}")
    if minimum is not None and number < minimum:
        raise SpecError(f"{name}: minimal {minimum}, diterima {number}")
    return number


def _as_tuple(name, text):
    if text is None:
        return None
    try:
        return tuple(int(part) for part in str(text).split(","))
    except ValueError:
        raise SpecError(f"{name}: format 'a,b,...' dengan bilangan bulat, diterima {text!r}")


@dataclass
class RunConfig:
    """Satu kali eksekusi CLI: perintah, spesifikasi, dan parameter output."""

    command: str
    spec_path: str
    grade: int = 2
    fmt: str = "json"
    out: str = None
    seed: int = 20240601
    jobs: int = 1
    quotient: bool = False
    kind: str = "section3"
    pair: tuple = None
    multidegree: tuple = None
    factor_check: bool = False
    kmax: int = 6

    @classmethod
    def from_args(cls, args):
        """Gabungkan argumen argparse dengan default dari environment (.env)."""
        command = args.command
        if command not in COMMANDS:
            raise SpecError(f"command: tidak dikenal {command!r}")
        fmt = args.format if args.format is not None else DEFAULT_FORMAT
        if fmt not in FORMATS:
            raise SpecError(f"format: harus salah satu dari {FORMATS}, diterima {fmt!r}")
        config = cls(
            command=command,
            spec_path=args.spec,
            grade=_as_int("grade", args.grade, minimum=0),
            fmt=fmt,
            out=args.out,
            seed=_as_int("seed", args.seed if args.seed is not None else DEFAULT_SEED),
            jobs=_as_int("jobs", args.jobs if args.jobs is not None else DEFAULT_JOBS, minimum=1),
            quotient=bool(args.quotient),
            kind=args.kind,
            pair=_as_tuple("pair", args.pair),
            multidegree=_as_tuple("multidegree", args.multidegree),
            factor_check=bool(args.factor_check),
            kmax=_as_int("kmax", DEFAULT_KMAX, minimum=1),
        )
        if config.pair is not None and len(config.pair) != 2:
            raise SpecError(f"pair: harus tepat dua indeks, diterima {args.pair!r}")
        return config


def setup_logging(level=None):
    """Format log meniru prefix print lama: 'RMATRIX: pesan'."""
    level = (level or DEFAULT_LOG_LEVEL).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(name)s: %(message)s",
        force=True,
    )
