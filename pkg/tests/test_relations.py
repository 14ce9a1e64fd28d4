"""Relation data: validity, expansion, invariants, tame symbols, residue theorem."""

import pytest
import sympy

from kgeo import INFINITY, catalog, make_field, point_at, valuation
from kgeo.errors import AlgebraError
from kgeo.forms import DifferentialForm
from kgeo.fuzz import random_data
from kgeo.io import load_datum
from kgeo.line import as_line_function
from kgeo.parse import parse_expression
from kgeo.relations import (
    MAX,
    SUM,
    SymbolSum,
    dlog_invariant,
    expand_relation,
    gaga_invariant,
    multilinear_equal,
    omega_invariant,
    profile_is_trivial,
    relation_terms,
    residue_check,
    tame_profile,
    tame_symbol,
    validate_datum,
    verify_vanishing,
)
from kgeo.suite import expected_sum, steinberg_expected


def _sum(K, sig, entries):
    return expected_sum(K, sig, [(c, None, v) for c, v in entries])


# --- validity ----------------------------------------------------------------


def test_double_pole_max_valid():
    assert validate_datum(load_datum(catalog.payload("max-only"))).valid


def test_double_pole_sum_invalid_at_infinity():
    v = validate_datum(load_datum(catalog.payload("max-only"), variant=SUM))
    assert not v.valid
    assert [c.name for c in v.failures()] == ["modulus_dominates_sum"]
    assert v.condition("modulus_dominates_sum").witnesses == [{"point": "inf", "needs": 4, "has": 2}]
    # f - 1 = -1/t^2 vanishes to order exactly 2 at infinity
    D = load_datum(catalog.payload("max-only"))
    assert valuation(D.f - 1, INFINITY) == 2


def test_omega_datum_valid():
    v = validate_datum(load_datum(catalog.payload("omega-r1")))
    assert v.valid
    assert any("Ga" in a for a in v.assumptions)


def test_f_equal_one_rejected():
    obj = catalog.payload("leibniz")
    obj["f"] = "1"
    v = validate_datum(load_datum(obj))
    assert not v.condition("f_not_one").passed


def test_section_modulus_too_small():
    obj = catalog.payload("leibniz")
    obj["sections"][0]["modulus"] = [{"point": "inf", "mult": 1}]
    v = validate_datum(load_datum(obj))
    assert not v.condition("section_0_sc_modulus").passed


# --- expansions ----------------------------------------------------------------


def test_psi_expansion_twelve_points():
    D = load_datum(catalog.payload("leibniz"))
    assert len(relation_terms(D)) == 12
    assert all(t.values[0] == t.values[1] for t in relation_terms(D))


def test_psi_expansion_corrected_six_terms():
    D = load_datum(catalog.payload("leibniz"))
    K = D.base
    s = expand_relation(D)
    assert multilinear_equal(s, _sum(K, ("Ga", "Ga"), catalog.LEIBNIZ_EXPANSION_CORRECTED))


def test_psi_printed_six_terms_are_not_a_relation():
    # the printed list maps to a nonzero form under {x, y} -> x dy
    K = make_field(1, ("a", "b"))
    printed = _sum(K, ("Ga", "Ga"), catalog.LEIBNIZ_EXPANSION)
    w, _ = gaga_invariant(printed)
    assert not w.is_zero()
    fixed, _ = gaga_invariant(_sum(K, ("Ga", "Ga"), catalog.LEIBNIZ_EXPANSION_CORRECTED))
    assert fixed.is_zero()


def test_pairing_rule():
    # {c, c} + {-c, -c} = {2c, c} in K (x)_Z K
    K = make_field(1, ("a", "b"))
    c = K.gen("a") * K.gen("b") + 1
    lhs = SymbolSum.from_symbols(K, ("Ga", "Ga"), [(1, (c, c)), (1, (-c, -c))])
    rhs = SymbolSum.from_symbols(K, ("Ga", "Ga"), [(1, (c * 2, c))])
    assert multilinear_equal(lhs, rhs)
    assert not lhs.same_terms(rhs)


def test_double_pole_max_expansion():
    D = load_datum(catalog.payload("max-only"))
    K = D.base
    s = expand_relation(D)
    assert s.same_terms(_sum(K, ("Ga", "Ga"), [(1, ["a/2", "b"]), (1, ["-a/2", "-b"]), (-2, ["0", "0"])]))


def test_omega_datum_expansion():
    D = load_datum(catalog.payload("omega-r1"))
    K = D.base
    want = expected_sum(K, ("Ga", "Gm"), catalog.OMEGA_R1_EXPANSION, {catalog.BETA_POLY: "eisenstein:a"})
    assert expand_relation(D).same_terms(want)


def test_steinberg_expansion():
    D = load_datum(catalog.payload("steinberg"))
    s = expand_relation(D)
    assert len(s) == 12
    assert s.same_terms(steinberg_expected(D.base))


# --- invariants ------------------------------------------------------------------


def test_omega_of_omega_datum_is_zero():
    D = load_datum(catalog.payload("omega-r1"))
    assert omega_invariant(expand_relation(D)).is_zero()


def test_omega_of_single_symbol(Qab):
    s = SymbolSum.from_symbols(Qab, ("Ga", "Gm"), [(1, (Qab.gen("a"), Qab.gen("b")))])
    w = omega_invariant(s)
    assert Qab.eq(w.coeff(("b",)), Qab.gen("a") / Qab.gen("b"))


def test_gaga_leibniz_relation(Qab):
    rel = _sum(Qab, ("Ga", "Ga"), catalog.LEIBNIZ_RELATION)
    w, p = gaga_invariant(rel)
    assert w.is_zero() and Qab.is_zero(p)


def test_gaga_c_one(Qab):
    c = Qab.gen("a") + 3
    w, p = gaga_invariant(SymbolSum.from_symbols(Qab, ("Ga", "Ga"), [(1, (c, 1))]))
    assert w.is_zero() and Qab.eq(p, c)


def test_gaga_double_pole_nonzero():
    D = load_datum(catalog.payload("max-only"))
    K = D.base
    w, p = gaga_invariant(expand_relation(D))
    a, b = K.gen("a"), K.gen("b")
    assert w == DifferentialForm(K, 1, {("b",): a}) and K.eq(p, a * b)


def test_invariant_signature_mismatch(Qab):
    s = SymbolSum.from_symbols(Qab, ("Gm", "Gm"), [(1, (Qab.gen("a"), Qab.gen("b")))])
    with pytest.raises(AlgebraError):
        gaga_invariant(s)


def test_dlog_of_steinberg_sum():
    D = load_datum(catalog.payload("steinberg"))
    assert dlog_invariant(expand_relation(D)).is_zero()


# --- tame symbols ---------------------------------------------------------------------


def test_tame_symbol_simple_cases():
    K = make_field(1, ("a",))
    x = as_line_function(K.gen("a"), K)
    E = x.field.base
    zero = point_at(E, 0)
    # {a, c} at a = 0 gives c
    assert E.eq(tame_symbol(x, as_line_function(K.convert(5), K), zero), E.convert(5))
    # a Steinberg symbol {u, 1 - u} with v(u) = v(1 - u) = 0 gives 1
    u = as_line_function(K.gen("a") + 2, K)
    assert E.eq(tame_symbol(u, 1 - u, zero), E.one)


def test_tame_symbol_values_against_sympy():
    # oracle: (-1)^(v(x) v(y)) y^v(x) / x^v(y) evaluated with sympy at a = 0
    K = make_field(1, ("a",))
    A = sympy.Symbol("a")
    cases = [("a", "5"), ("a^2*(1+a)", "a*(3-a)"), ("a^3", "1 - a^6"), ("2*a", "a")]
    for xs, ys in cases:
        x = as_line_function(parse_expression(xs, K), K)
        y = as_line_function(parse_expression(ys, K), K)
        X = sympy.sympify(xs.replace("^", "**"), locals={"a": A})
        Y = sympy.sympify(ys.replace("^", "**"), locals={"a": A})
        vx = sympy.Poly(sympy.numer(sympy.together(X)), A).monoms()[-1][0]
        vy = sympy.Poly(sympy.numer(sympy.together(Y)), A).monoms()[-1][0]
        want = sympy.limit((-1) ** (vx * vy) * Y ** vx / X ** vy, A, 0)
        p = point_at(x.field.base, 0)
        got = tame_symbol(x, y, p)
        assert x.field.base.format(got) == str(want), (xs, ys)


def test_steinberg_symbol_tame_trivial():
    K = make_field(1, ("a",))
    a = K.gen("a")
    s = SymbolSum.from_symbols(K, ("Gm", "Gm"), [(1, (a * a + 1, -(a * a)))])
    assert profile_is_trivial(tame_profile(s))


def test_nontrivial_profile_detected():
    K = make_field(1, ("a",))
    a = K.gen("a")
    s = SymbolSum.from_symbols(K, ("Gm", "Gm"), [(1, (a, K.convert(2)))])
    prof = tame_profile(s)
    assert not profile_is_trivial(prof)


def test_steinberg_tame_profile_combination():
    D = load_datum(catalog.payload("steinberg"))
    K = D.base
    a6 = K.gen("a") ** 6
    combo = expand_relation(D).scale(6) - SymbolSum.from_symbols(K, ("Gm", "Gm"), [(2, (a6, K.one - a6))])
    prof = tame_profile(combo)
    assert profile_is_trivial(prof)
    # the support covers 0, infinity and the sixth roots of unity at least
    assert INFINITY in prof
    labels = {p.label("a") for p in prof}
    assert "a" in labels and "a - 1" in labels and "a + 1" in labels


# --- residue theorem and vanishing reports ---------------------------------------------


def test_psi_residue_check():
    rc = residue_check(load_datum(catalog.payload("leibniz")))
    assert rc.ok


def test_random_gaga_data_vanish():
    for D in random_data(("Ga", "Ga"), 5, seed=3):
        assert validate_datum(D).valid
        rep = verify_vanishing(D)
        assert rep.passed, rep.to_json()


def test_random_ga_gm_data_vanish():
    for D in random_data(("Ga", "Gm"), 5, seed=4):
        assert validate_datum(D).valid
        assert verify_vanishing(D).invariant("omega").zero


def test_max_values_reported_not_asserted():
    rep = verify_vanishing(load_datum(catalog.payload("max-only")))
    assert rep.passed
    g = rep.invariant("gaga")
    assert not g.zero and not g.asserted


def test_invalid_datum_report_is_failure():
    rep = verify_vanishing(load_datum(catalog.payload("max-only"), variant=SUM))
    assert not rep.passed
    assert rep.expansion is None


def test_variant_constants():
    assert {SUM, MAX} == {"sum", "max"}
