import pytest

from tropcrit import conf as tropcrit_conf
from tropcrit.polytope import Polytope


@pytest.fixture(autouse=True)
def fresh_conf(monkeypatch):
    monkeypatch.delenv("TROPCRIT_ORDER", raising=False)
    monkeypatch.delenv("TROPCRIT_THREADS", raising=False)
    tropcrit_conf.reset_conf()
    yield
    tropcrit_conf.reset_conf()


@pytest.fixture
def cp2():
    return Polytope.simplex(2)


@pytest.fixture
def s2xs2():
    return Polytope.box(1, 2)
