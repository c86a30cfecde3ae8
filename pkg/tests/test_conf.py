import time
from fractions import Fraction

from tropcrit.conf import ProbeConf, TropcritConf, configure, get_conf, reset_conf, run_parallel


def test_defaults():
    conf = get_conf()
    assert conf.order == 5
    assert conf.zero_tol == 1e-10
    assert conf.svg_box == 400


def test_order_from_environment(monkeypatch):
    monkeypatch.setenv("TROPCRIT_ORDER", "7/2")
    reset_conf()
    assert get_conf().order == Fraction(7, 2)


def test_malformed_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("TROPCRIT_ORDER", "seven")
    monkeypatch.setenv("TROPCRIT_THREADS", "many")
    reset_conf()
    assert get_conf().order == 5
    assert get_conf().get_threads() >= 1


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("TROPCRIT_THREADS", "3")
    assert TropcritConf().get_threads() == 3
    assert TropcritConf(threads=0).get_threads() == 1


def test_configure_replaces_fields():
    configure(order=Fraction(8), threads=2)
    assert get_conf().order == 8
    assert get_conf().threads == 2


def test_probe_conf_falls_back_to_shared_order():
    configure(order=Fraction(3))
    assert ProbeConf().get_order() == 3
    assert ProbeConf(order=Fraction(2)).get_order() == 2


def test_run_parallel_keeps_input_order():
    def slow_square(x):
        time.sleep(0.01 * (5 - x))
        return x * x

    assert run_parallel(slow_square, range(5), threads=4) == [0, 1, 4, 9, 16]
    assert run_parallel(slow_square, range(5), threads=1) == [0, 1, 4, 9, 16]
    assert run_parallel(slow_square, [], threads=4) == []
