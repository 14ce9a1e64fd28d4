import random

import pytest

from kgeo import catalog, make_field
from kgeo.algebra.extension import Extension
from kgeo.chow import (
    ProductShape,
    ZeroCycle,
    cycle_class,
    datum_matches_shape,
    infer_shape,
    push_datum_to_cycle,
    verify_rational_equivalence,
)
from kgeo.errors import InvalidDatum
from kgeo.forms import d, dlog
from kgeo.fuzz import random_data
from kgeo.io import load_cycle, load_datum
from kgeo.relations import SymbolSum, gaga_invariant


@pytest.fixture(scope="module")
def K():
    return make_field(1, ("a", "b"))


def test_shape_parsing():
    assert ProductShape.parse("MxN").factors == ("M", "N")
    assert ProductShape.parse("MxN^3").r == 3
    assert ProductShape.parse("MxM").is_mm
    with pytest.raises(InvalidDatum):
        ProductShape.parse("NxN")


def test_class_of_rational_point_MxN(K):
    a, b = K.gen("a"), K.gen("b")
    cls = cycle_class(ZeroCycle.point(K, (a, b)), "MxN")
    assert cls["degree"] == 1
    assert K.eq(cls["Ga"], a) and K.eq(cls["K[1]"], b)
    assert cls["Omega[1]"] == dlog(b, K) * a
    # a dlog b has coefficient a/b on db
    assert K.eq(cls["Omega[1]"].coeff(("b",)), a / b)


def test_class_of_0_1(K):
    cls = cycle_class(ZeroCycle.point(K, (0, 1)), "MxN")
    assert cls["degree"] == 1 and K.is_zero(cls["Ga"]) and K.eq(cls["K[1]"], K.one)
    assert cls["Omega[1]"].is_zero()


def test_class_on_MxM_matches_gaga(K):
    a, b = K.gen("a"), K.gen("b")
    cls = cycle_class(ZeroCycle.point(K, (a, b)), "MxM")
    # oracle: the pair invariant of the single symbol {a, b}
    w, prod = gaga_invariant(SymbolSum.from_symbols(K, ("Ga", "Ga"), [(1, (a, b))]))
    assert cls["degree"] == 1
    assert K.eq(cls["Ga[1]"], a) and K.eq(cls["Ga[2]"], b)
    assert K.eq(cls["product"], prod) and cls["Omega[1,2]"] == w
    assert w == d(b, K) * a


def test_point_on_modulus_rejected(K):
    with pytest.raises(InvalidDatum):
        cycle_class(ZeroCycle.point(K, (K.gen("a"), 0)), "MxN")


def test_degree_is_cycle_degree(K):
    obj = {"points": [{"coords": ["a", "b"], "mult": 1},
                      {"coords": ["u", "b"], "min_poly": "u^2 - a", "mult": 2}]}
    z, _ = load_cycle(obj)
    cls = cycle_class(z, "MxN")
    assert cls["degree"] == z.degree == 5
    # Tr(u) = 0 and N(b) = b^2 over the quadratic point
    assert K.eq(cls["Ga"], K.gen("a"))
    assert K.eq(cls["K[1]"], K.gen("b") ** 5)


def test_additivity(K):
    rng = random.Random(11)
    a, b = K.gen("a"), K.gen("b")

    def rand_cycle():
        z = ZeroCycle(K)
        for _ in range(rng.randint(1, 3)):
            x = a * rng.randint(-2, 2) + rng.randint(-3, 3)
            y = b * rng.randint(0, 2) + rng.choice([1, 2, -1])
            z = z + ZeroCycle.point(K, (x, y), rng.choice([-1, 1, 2]))
        return z

    for _ in range(10):
        z1, z2 = rand_cycle(), rand_cycle()
        for shape in ("MxN", "MxM"):
            assert cycle_class(z1 + z2, shape).equals(cycle_class(z1, shape) + cycle_class(z2, shape))


def test_push_psi_datum():
    D = load_datum(catalog.payload("leibniz"))
    z = push_datum_to_cycle(D)
    # one rational point (c, c) per zero or pole of f
    assert len(z) == 12 and z.degree == 0
    assert all(p.coords[0] == p.coords[1] for p, _ in z.terms)


def test_push_constant_section_datum():
    obj = catalog.payload("leibniz")
    obj["sections"] = [{"kind": "Const", "expr": "a", "modulus": [], "group": "Ga"},
                       {"kind": "Const", "expr": "b", "modulus": [], "group": "Ga"}]
    z = push_datum_to_cycle(load_datum(obj))
    assert len(z) == 0


def test_push_omega_datum():
    D = load_datum(catalog.payload("omega-r1"))
    z = push_datum_to_cycle(D)
    assert len(z) == 5
    degs = sorted(p.degree for p, _ in z.terms)
    assert degs == [1, 1, 1, 2, 5]
    assert any(isinstance(p.field, Extension) and p.field.degree == 5 for p, _ in z.terms)


def test_rational_equivalence_on_catalog():
    for name in ("leibniz", "omega-r1"):
        D = load_datum(catalog.payload(name))
        shape = infer_shape(D)
        assert datum_matches_shape(D, shape)
        assert verify_rational_equivalence(D, shape)


def test_rational_equivalence_constant_sections():
    obj = catalog.payload("leibniz")
    obj["sections"] = [{"kind": "Const", "expr": "a", "modulus": [], "group": "Ga"},
                       {"kind": "Const", "expr": "b", "modulus": [], "group": "Ga"}]
    assert verify_rational_equivalence(load_datum(obj), "MxM")


def test_rational_equivalence_random_data():
    matched = 0
    for sig in (("Ga", "Gm"), ("Ga", "Ga")):
        for D in random_data(sig, 20, seed=5):
            shape = infer_shape(D)
            if datum_matches_shape(D, shape):
                matched += 1
                assert verify_rational_equivalence(D, shape)
    assert matched >= 3


def test_max_datum_rejected():
    D = load_datum(catalog.payload("max-only"))
    with pytest.raises(InvalidDatum):
        verify_rational_equivalence(D)
