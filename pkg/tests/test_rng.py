import pytest

from dpcolor.parallel import THREADS_ENV, map_ordered, resolve_threads
from dpcolor.rng import MASK64, check_seed, derive, np_rng, py_rng, splitmix64


def test_splitmix_reference_value():
    # first output of the reference splitmix64 generator seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_derive_is_stable_and_key_sensitive():
    assert derive(1, 2, 3) == derive(1, 2, 3)
    assert derive(1, 2, 3) != derive(1, 3, 2)
    assert derive(1) == 1
    keys = {derive(42, i) for i in range(10 ** 4)}
    assert len(keys) == 10 ** 4
    assert all(0 <= k <= MASK64 for k in keys)


def test_seed_validation():
    with pytest.raises(ValueError):
        check_seed(-1)
    with pytest.raises(ValueError):
        check_seed(1 << 64)
    with pytest.raises(TypeError):
        check_seed(1.5)
    with pytest.raises(TypeError):
        check_seed(True)


def test_generators_reproduce():
    assert np_rng(5).integers(0, 1000, 10).tolist() == np_rng(5).integers(0, 1000, 10).tolist()
    assert py_rng(5).getrandbits(200) == py_rng(5).getrandbits(200)


def _square(x):
    return x * x


def test_map_ordered_keeps_order():
    items = list(range(37))
    assert map_ordered(_square, items, threads=1) == [x * x for x in items]
    assert map_ordered(_square, items, threads=2) == [x * x for x in items]


def test_resolve_threads(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert resolve_threads() == 3
    assert resolve_threads(5) == 5
    assert resolve_threads(0) == 1
    monkeypatch.delenv(THREADS_ENV)
    assert resolve_threads() >= 1
