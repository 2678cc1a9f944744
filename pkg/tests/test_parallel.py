from hexakit.parallel import pmap, thread_count
from hexakit.polyiso import random_stress


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("HEXAKIT_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("HEXAKIT_THREADS", "junk")
    assert thread_count() >= 1


def test_pmap_preserves_order():
    assert pmap(lambda x: x * x, range(50), threads=4) == [x * x for x in range(50)]


def test_stress_independent_of_threads(monkeypatch):
    monkeypatch.setenv("HEXAKIT_THREADS", "1")
    a = random_stress(3000, 11)
    monkeypatch.setenv("HEXAKIT_THREADS", "6")
    assert random_stress(3000, 11) == a
