# File ini digunakan untuk berbagi hasil komputasi antar thread worker.
# Nilai yang disimpan tidak pernah diubah setelah dibuat; yang dijaga lock
# hanya proses pengisiannya.

from collections import defaultdict
from threading import Lock


class SharedCache:
    """
    Tabel memo dengan kontrak inisialisasi tunggal: untuk setiap kunci,
    factory dipanggil paling banyak satu kali walaupun beberapa thread
    meminta kunci yang sama secara bersamaan.
    """

    def __init__(self, name):
        self.name = name
        # Kunci: apa saja yang hashable, Nilai: hasil factory
        self._values = {}
        # Lock per kunci: thread lain yang meminta kunci berbeda tidak ikut menunggu
        self._key_locks = defaultdict(Lock)
        self._guard = Lock()

    def get_or_compute(self, key, factory):
        with self._guard:
            if key in self._values:
                return self._values[key]
            key_lock = self._key_locks[key]

        with key_lock:
            with self._guard:
                if key in self._values:
                    return self._values[key]
            value = factory()
            with self._guard:
                self._values[key] = value
                self._key_locks.pop(key, None)
        return value

    def peek(self, key, default=None):
        with self._guard:
            return self._values.get(key, default)

    def __len__(self):
        with self._guard:
            return len(self._values)

    def __contains__(self, key):
        with self._guard:
            return key in self._values
