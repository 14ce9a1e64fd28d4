import pytest

from kgeo import FunctionField, make_field, parse_expression


@pytest.fixture(scope="session")
def Qa():
    return make_field(1, ("a",))


@pytest.fixture(scope="session")
def Qab():
    return make_field(1, ("a", "b"))


@pytest.fixture(scope="session")
def Z12a():
    return make_field(12, ("a",))


def rf(text, K):
    """Rational function of t over K."""
    return parse_expression(text, FunctionField(K))


def upoly(text, K):
    g = rf(text, K)
    assert g.den.degree == 0
    return g.num * K.inv(g.den.lc)
