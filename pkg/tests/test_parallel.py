import pytest

from polylog.chromatic import log_p
from polylog.graphhom import SymMatrix, log_h
from polylog.hardcore import log_z_hc
from polylog.parallel import THREADS_ENV, default_threads, ordered_map
from polylog.sinkfree import log_z_sfo

from conftest import complete, petersen


def _square(x):
    return x * x


def test_ordered_map_keeps_order():
    items = list(range(23))
    assert ordered_map(_square, items, 1) == [x * x for x in items]
    assert ordered_map(_square, items, 3) == [x * x for x in items]
    with pytest.raises(ValueError):
        ordered_map(_square, items, 0)


def test_env_fallback(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert default_threads() == 3
    monkeypatch.setenv(THREADS_ENV, "zero")
    with pytest.raises(ValueError):
        default_threads()
    monkeypatch.delenv(THREADS_ENV)
    assert default_threads() >= 1


def test_results_identical_across_thread_counts():
    G = petersen()
    for fn in (lambda t: log_z_hc(G, 6, threads=t), lambda t: log_z_sfo(G, 12, threads=t)):
        base = fn(1)
        assert fn(2) == base
        assert fn(4) == base
    k5 = complete(5)
    assert log_p(k5, 4, threads=2) == log_p(k5, 4)
    A = SymMatrix([[1, 2], [2, 0]])
    assert log_h(k5, A, 3, threads=2) == log_h(k5, A, 3)
