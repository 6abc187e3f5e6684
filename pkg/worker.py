# worker.py

import logging
from threading import Thread, Lock

log = logging.getLogger("WORKER")

# --- Pool Thread untuk Blok Multidegree ---


def run_blocks(task, blocks, jobs=1, label="blok"):
    """
    Menjalankan `task(block)` untuk setiap blok secara paralel di thread daemon.
    Hasil dikembalikan sesuai urutan `blocks`, jadi output tetap deterministik.
    Error pertama (menurut urutan blok) dilempar ulang setelah semua thread selesai.
    """
    blocks = list(blocks)
    if jobs <= 1 or len(blocks) <= 1:
        return [task(block) for block in blocks]

    pending = list(enumerate(blocks))
    results = {}
    errors = {}
    lock = Lock()

    def drain():
        while True:
            with lock:
                if not pending:
                    return
                index, block = pending.pop(0)
            try:
                value = task(block)
            except Exception as exc:
                with lock:
                    errors[index] = exc
                continue
            with lock:
                results[index] = value

    worker_threads = {}
    for number in range(min(jobs, len(blocks))):
        thread = Thread(target=drain, daemon=True, name=f"{label}-{number}")
        worker_threads[number] = thread
        thread.start()
    log.debug("%d thread %s dimulai untuk %d blok", len(worker_threads), label, len(blocks))

    for thread in worker_threads.values():
        thread.join()

    if errors:
        first = min(errors)
        log.warning("Blok %s ke-%d gagal: %s", label, first, errors[first])
        raise errors[first]
    return [results[index] for index in range(len(blocks))]
