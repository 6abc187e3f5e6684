import threading
from argparse import Namespace

import pytest

from worker import run_blocks
from shared_state import SharedCache
from config import RunConfig
from errors import SpecError


def test_urutan_hasil_tetap():
    assert run_blocks(lambda x: x * x, range(10), jobs=4) == [x * x for x in range(10)]
    assert run_blocks(lambda x: x, [], jobs=4) == []


def test_error_blok_pertama_dilempar():
    def task(x):
        if x in (3, 7):
            raise ValueError(f"blok {x}")
        return x

    with pytest.raises(ValueError, match="blok 3"):
        run_blocks(task, range(10), jobs=4)


def test_cache_inisialisasi_tunggal():
    cache = SharedCache("uji")
    calls = []
    barrier = threading.Barrier(6)

    def factory():
        calls.append(1)
        return "nilai"

    def worker():
        barrier.wait()
        assert cache.get_or_compute("kunci", factory) == "nilai"

    threads = [threading.Thread(target=worker) for _ in range(6)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert len(calls) == 1
    assert "kunci" in cache and len(cache) == 1


def _args(**overrides):
    base = dict(
        command="rmatrix", spec="preset:generic-2", grade="2", format=None, out=None,
        seed=None, jobs=None, quotient=False, kind="section3", pair=None,
        multidegree=None, factor_check=False,
    )
    base.update(overrides)
    return Namespace(**base)


def test_config_dari_argumen():
    config = RunConfig.from_args(_args(pair="1,2", multidegree="1,1,0", jobs="2"))
    assert config.pair == (1, 2)
    assert config.multidegree == (1, 1, 0)
    assert config.jobs == 2
    assert config.fmt in ("json", "latex", "text")


def test_config_ditolak():
    with pytest.raises(SpecError):
        RunConfig.from_args(_args(grade="-1"))
    with pytest.raises(SpecError):
        RunConfig.from_args(_args(pair="1,2,3"))
    with pytest.raises(SpecError):
        RunConfig.from_args(_args(format="yaml"))
