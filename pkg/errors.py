# errors.py

# --- Hierarki Error ---
# Setiap error membawa exit_code yang dipakai langsung oleh main.py.


class QForgeError(Exception):
    """Error dasar untuk semua kegagalan komputasi qforge."""

    exit_code = 3


class SpecError(QForgeError):
    """Spesifikasi aljabar atau konfigurasi tidak valid."""


class ScalarDivisionError(QForgeError, ZeroDivisionError):
    """Pembagian dengan Scalar nol."""


class SpecializationPoleError(QForgeError):
    """Penyebut menjadi nol setelah spesialisasi (ada pole di lokus ini)."""

    def __init__(self, message, scalar_text=None):
        super().__init__(message)
        self.scalar_text = scalar_text


class SideMismatchError(QForgeError):
    """Mencampur elemen A+ dan A-, atau turunan dipakai di sisi yang salah."""


class PreconditionError(QForgeError):
    """Prasyarat operasi tidak terpenuhi."""


class NotConstantError(QForgeError):
    """Elemen yang diberikan bukan konstanta."""


class GradeMismatchError(QForgeError):
    """Grade komponen tidak seragam atau rank tensor tidak cocok."""


class ObstructionDetected(QForgeError):
    """
    Rekursi koefisien t tidak bisa diselesaikan secara unik.
    `constants` berisi konstanta (FreeElement) pada multidegree yang bermasalah.
    """

    exit_code = 2

    def __init__(self, grade, multidegree, constants, inconsistent=True):
        self.grade = grade
        self.multidegree = tuple(multidegree)
        self.constants = list(constants)
        self.inconsistent = inconsistent
        reason = "sistem tidak konsisten" if inconsistent else "solusi tidak unik"
        super().__init__(
            f"Obstruksi pada grade {grade}, multidegree {self.multidegree}: "
            f"{reason}, {len(self.constants)} konstanta"
        )
