"""Expression parsing, printing and JSON payload round trips."""

import json

import pytest

from kgeo import FunctionField, catalog, make_field, parse_expression
from kgeo.errors import ParseError, SchemaError
from kgeo.io import cycle_to_json, datum_to_json, dumps, load_cycle, load_datum
from kgeo.relations import expand_relation
from kgeo.suite import run_suite, suite_json

PAYLOADS = ("steinberg", "omega-r1", "leibniz", "max-only")


def test_double_pole_f_parses():
    K = make_field(1, ("a", "b"))
    F = FunctionField(K)
    f = parse_expression("(t^2-1)/t^2", F)
    t = F.t
    assert f == (t * t - 1) / (t * t)


def test_one_parses_to_unit(Qa):
    assert Qa.eq(parse_expression("1", Qa), Qa.one)


def test_zeta_power(Z12a):
    x = parse_expression("zeta^4*a", Z12a)
    assert Z12a.eq(x, Z12a.gen("zeta") ** 4 * Z12a.gen("a"))


@pytest.mark.parametrize("text", ["(t^2", "t^^2", "2*", "a +* b", ""])
def test_syntax_errors_carry_position(text, Qab):
    with pytest.raises(ParseError) as exc:
        parse_expression(text, FunctionField(Qab))
    assert exc.value.position is not None


def test_unknown_identifier(Qa):
    with pytest.raises(ParseError):
        parse_expression("a + q", Qa)


@pytest.mark.parametrize("name", PAYLOADS)
def test_expression_round_trip_on_payloads(name):
    obj = catalog.payload(name)
    D = load_datum(obj)
    F = D.f.field
    exprs = [D.f] + [s.expr for s in D.sections]
    for x in exprs:
        text = F.format(x)
        assert parse_expression(text, F) == x
        assert F.format(parse_expression(text, F)) == text


@pytest.mark.parametrize("name", PAYLOADS)
def test_datum_round_trip(name):
    D = load_datum(catalog.payload(name))
    obj = datum_to_json(D)
    D2 = load_datum(json.loads(json.dumps(obj)))
    assert datum_to_json(D2) == obj
    assert expand_relation(D2).same_terms(expand_relation(D))


def test_cycle_round_trip(Qab):
    obj = {"shape": "MxN", "points": [{"coords": ["a", "b"], "mult": 1},
                                      {"coords": ["u + 1", "b"], "min_poly": "u^2 - a", "mult": -2}]}
    z, shape = load_cycle(obj)
    back = cycle_to_json(z, shape)
    z2, shape2 = load_cycle(back)
    assert shape2 == "MxN"
    assert cycle_to_json(z2, shape2) == back


def test_suite_report_round_trips_through_json():
    reports = run_suite("prop4.9")
    text = dumps(suite_json(reports, 0))
    assert dumps(json.loads(text)) == text


def test_truncated_payload_is_schema_error():
    obj = catalog.payload("leibniz")
    del obj["sections"]
    with pytest.raises(SchemaError):
        load_datum(obj)


def test_reserved_variable_rejected():
    obj = catalog.payload("leibniz")
    obj["field"] = {"zeta_order": 1, "variables": ["t"]}
    with pytest.raises(SchemaError):
        load_datum(obj)
