"""The built-in verification suite: one case per worked computation, each a list
of exact checks with expected verdicts."""

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import catalog
from .algebra.extension import extend
from .chow import ProductShape, ZeroCycle, cycle_class, datum_matches_shape, infer_shape, verify_rational_equivalence
from .forms import DifferentialForm, d, dlog
from .fuzz import random_data
from .io import load_datum
from .line import INFINITY, FunctionField, in_G, point_at, principal_divisor
from .parse import parse_expression
from .relations import (
    SUM,
    SymbolSum,
    SymbolTerm,
    dlog_invariant,
    evaluate_invariants,
    expand_relation,
    gaga_invariant,
    multilinear_equal,
    omega_invariant,
    profile_is_trivial,
    residue_check,
    tame_profile,
    validate_datum,
    verify_vanishing,
)


@dataclass
class Check:
    name: str
    passed: bool
    observed: object = None

    def to_json(self):
        out = {"name": self.name, "passed": self.passed}
        if self.observed is not None:
            out["observed"] = self.observed
        return out


@dataclass
class Report:
    case_id: str
    description: str
    expected: str
    checks: list = dc_field(default_factory=list)
    assumptions: list = dc_field(default_factory=list)
    values: dict = dc_field(default_factory=dict)
    error: str = ""
    seconds: float = 0.0  # human summary only; never serialized

    @property
    def passed(self):
        return not self.error and bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def check(self, name, passed, observed=None):
        self.checks.append(Check(name, bool(passed), observed))
        return bool(passed)

    def to_json(self):
        out = {
            "id": self.case_id,
            "description": self.description,
            "expected": self.expected,
            "verdict": self.verdict,
            "checks": [c.to_json() for c in self.checks],
            "assumptions": sorted(set(self.assumptions)),
            "values": self.values,
        }
        if self.error:
            out["error"] = self.error
        return out


# ---------------------------------------------------------------------------
# expected symbol sums


def _extension(K, text, certificate="auto"):
    g = parse_expression(text, FunctionField(K, "u"))
    return extend(K, g.num, certificate)[0]


def expected_sum(K, signature, entries, certificates=None):
    """SymbolSum from [(coeff, min_poly text or None, [value texts])]."""
    certificates = certificates or {}
    terms = []
    for coeff, minpoly, values in entries:
        L = K if minpoly is None else _extension(K, minpoly, certificates.get(minpoly, "auto"))
        terms.append(SymbolTerm(coeff, L, tuple(parse_expression(v, L) for v in values)))
    return SymbolSum(K, signature, terms)


def steinberg_expected(K):
    entries = [(1, None, [z, f"1 - ({z})"]) for z in catalog.STEINBERG_ZEROS]
    entries += [(-1, None, [p, f"1 - ({p})"]) for p in catalog.STEINBERG_POLES]
    return expected_sum(K, ("Gm", "Gm"), entries)


# ---------------------------------------------------------------------------
# cases


def case_steinberg(rep, seed):
    D = load_datum(catalog.payload("steinberg"))
    K = D.base
    v = validate_datum(D)
    rep.assumptions += v.assumptions
    rep.check("datum_valid", v.valid)
    rep.check("f_in_G(2[0]+[1]+2[inf])", in_G(D.f, D.modulus), repr(D.modulus))
    div = principal_divisor(D.f, D.hints)
    zeros = sorted(K.format(-p.poly.coeffs[0]) for p, m in div.items() if m > 0 and p.degree == 1)
    rep.check("div_f_six_simple_zeros",
              len(div.positive_part().support()) == 6 and all(m == 1 for _, m in div.positive_part().items()))
    rep.check("div_f_six_simple_poles",
              len(div.negative_part().support()) == 6 and all(m == 1 for _, m in div.negative_part().items()))
    want_zeros = {point_at(K, parse_expression(z, K)) for z in catalog.STEINBERG_ZEROS}
    want_poles = {point_at(K, parse_expression(p, K)) for p in catalog.STEINBERG_POLES}
    rep.check("zeros_are_pm_a3_pm_zeta_pm_zeta5", set(div.positive_part().support()) == want_zeros, zeros)
    rep.check("poles_are_zeta^2k_a", set(div.negative_part().support()) == want_poles)
    s = expand_relation(D)
    rep.values["expansion"] = s.format()
    rep.check("expansion_has_12_terms", len(s.terms) == 12, len(s.terms))
    rep.check("expansion_matches_displayed_sum", s.same_terms(steinberg_expected(K)))
    literal = SymbolTerm(1, K, (K.gen("a"), K.one + K.gen("a")))
    rep.check("no_literal_{a,1+a}_term", not any(t.same_symbol(literal) for t in s.terms))
    a6 = K.gen("a") ** 6
    combo = s.scale(6) - SymbolSum.from_symbols(K, ("Gm", "Gm"), [(2, (a6, K.one - a6))])
    prof = tame_profile(combo)
    rep.values["tame_places"] = [p.label("a") for p in prof]
    rep.check("tame_profile_6alpha_minus_2{a^6,1-a^6}_trivial", profile_is_trivial(prof), len(prof))
    rep.check("tame_profile_alpha_trivial", profile_is_trivial(tame_profile(s)))
    rep.check("dlog_invariant_zero", dlog_invariant(s).is_zero())


def case_omega(rep, seed):
    D = load_datum(catalog.payload("omega-r1"))
    K = D.base
    v = validate_datum(D)
    rep.assumptions += v.assumptions
    rep.check("datum_valid", v.valid)
    rep.check("section_moduli_minimal", all(v.condition(f"section_{i}_sc_modulus").passed for i in range(2)))
    s = expand_relation(D)
    rep.values["expansion"] = s.format()
    want = expected_sum(K, ("Ga", "Gm"), catalog.OMEGA_R1_EXPANSION,
                        {catalog.BETA_POLY: "eisenstein:a"})
    rep.check("expansion_matches_displayed_sum", s.same_terms(want))
    degs = sorted(t.field.degree if hasattr(t.field, "degree") and t.field is not K else 1 for t in s.terms)
    rep.check("trace_terms_of_degree_2_and_5", degs == [1, 1, 1, 2, 5], degs)
    w = omega_invariant(s)
    rep.values["omega"] = w.format()
    rep.check("omega_invariant_zero", w.is_zero())
    # each rewrite {x/n, x^n} has the same image as {x, x}: Tr(x/n dlog x^n) = Tr(x dlog x)
    for name, poly, n in (("alpha", catalog.ALPHA_POLY, 2), ("beta", catalog.BETA_POLY, 5)):
        L = _extension(K, poly, "eisenstein:a" if n == 5 else "auto")
        u = L.u
        lhs = omega_invariant(SymbolSum(K, ("Ga", "Gm"), [SymbolTerm(1, L, (u, u))]))
        rhs = omega_invariant(SymbolSum(K, ("Ga", "Gm"), [SymbolTerm(1, L, (u * L.inv(L.convert(n)), u ** n))]))
        rep.check(f"rewrite_{{{name}/{n},{name}^{n}}}_same_omega", lhs == rhs)
        rep.check(f"Tr({name} dlog {name})_is_zero", lhs.is_zero(), lhs.format())


def case_psi(rep, seed):
    D = load_datum(catalog.payload("leibniz"))
    K = D.base
    v = validate_datum(D)
    rep.assumptions += v.assumptions
    rep.check("datum_valid", v.valid)
    rep.check("f_in_G(4[inf])", in_G(D.f, D.modulus))
    s = expand_relation(D)
    rep.values["expansion"] = s.format()
    want = expected_sum(K, ("Ga", "Ga"), [(c, None, vals) for c, vals in catalog.LEIBNIZ_EXPANSION])
    fixed = expected_sum(K, ("Ga", "Ga"), [(c, None, vals) for c, vals in catalog.LEIBNIZ_EXPANSION_CORRECTED])
    rep.check("expansion_equals_corrected_six_terms", multilinear_equal(s, fixed))
    # the printed list is not a relation: its image a db is nonzero, so it
    # cannot be what the datum expands to
    printed, _ = gaga_invariant(want)
    rep.values["printed_list_form"] = printed.format()
    rep.check("printed_six_terms_differ_from_expansion",
              not multilinear_equal(s, want) and not printed.is_zero())
    form, prod = gaga_invariant(s)
    rep.values["gaga"] = {"form": form.format(), "product": K.format(prod)}
    rep.check("gaga_invariant_zero", form.is_zero() and K.is_zero(prod))
    rel = expected_sum(K, ("Ga", "Ga"), [(c, None, vals) for c, vals in catalog.LEIBNIZ_RELATION])
    f2, p2 = gaga_invariant(rel)
    rep.check("leibniz_relation_gaga_zero", f2.is_zero() and K.is_zero(p2))


def case_phi(rep, seed, count=10):
    D = load_datum(catalog.payload("leibniz"))
    rc = residue_check(D)
    rep.values["psi_datum"] = rc.to_json()
    rep.check("psi_datum_residue_check", rc.ok)
    data = random_data(("Ga", "Ga"), count, seed)
    ok = 0
    for i, R in enumerate(data):
        v = validate_datum(R)
        rep.assumptions += v.assumptions
        c = residue_check(R) if v.valid else None
        if v.valid and c.ok:
            ok += 1
    rep.values["random_data"] = {"seed": seed, "count": count, "passed": ok}
    rep.check("random_(Ga,Ga)_data_residue_checks", ok == count, f"{ok}/{count}")


def case_double_pole(rep, seed):
    D = load_datum(catalog.payload("max-only"))
    K = D.base
    v = validate_datum(D)
    rep.assumptions += v.assumptions
    rep.check("max_valid", v.valid)
    s = expand_relation(D)
    rep.values["expansion"] = s.format()
    want = expected_sum(K, ("Ga", "Ga"), [(c, None, vals) for c, vals in catalog.MAX_ONLY_EXPANSION])
    rep.check("expansion_matches", s.same_terms(want))
    form, prod = gaga_invariant(s)
    rep.values["gaga"] = {"form": form.format(), "product": K.format(prod)}
    a, b = K.gen("a"), K.gen("b")
    rep.check("gaga_equals_(a db, ab)",
              form == DifferentialForm(K, 1, {("b",): a}) and K.eq(prod, a * b))
    rep.check("gaga_nonzero", not (form.is_zero() and K.is_zero(prod)))


def case_double_pole_sum(rep, seed):
    D = load_datum(catalog.payload("max-only"), variant=SUM)
    v = validate_datum(D)
    rep.assumptions += v.assumptions
    failed = [c.name for c in v.failures()]
    rep.values["failures"] = [c.to_json() for c in v.failures()]
    rep.check("sum_invalid", not v.valid)
    rep.check("only_sum_domination_fails", failed == ["modulus_dominates_sum"], failed)
    wit = v.condition("modulus_dominates_sum").witnesses
    rep.check("deficiency_at_inf_has_2_needs_4", wit == [{"point": "inf", "needs": 4, "has": 2}], wit)


def case_cor52(rep, seed):
    from .algebra.fields import make_field

    K = make_field(1, ("a", "b"))
    a, b = K.gen("a"), K.gen("b")
    MN = ProductShape.parse("MxN")
    cls = cycle_class(ZeroCycle.point(K, (a, b)), MN)
    rep.values["class_(a,b)_MxN"] = cls.to_json()
    rep.check("class_(a,b)_on_MxN_is_(1,a,b,a_dlog_b)",
              cls["degree"] == 1 and K.eq(cls["Ga"], a) and K.eq(cls["K[1]"], b)
              and cls["Omega[1]"] == dlog(b, K) * a)
    c0 = cycle_class(ZeroCycle.point(K, (0, 1)), MN)
    rep.check("class_(0,1)_on_MxN_is_(1,0,1,0)",
              c0["degree"] == 1 and K.is_zero(c0["Ga"]) and K.eq(c0["K[1]"], K.one) and c0["Omega[1]"].is_zero())
    mm = cycle_class(ZeroCycle.point(K, (a, b)), ProductShape.parse("MxM"))
    rep.check("class_(a,b)_on_MxM_is_(1,a,b,ab,a_db)",
              mm["degree"] == 1 and K.eq(mm["Ga[1]"], a) and K.eq(mm["Ga[2]"], b)
              and K.eq(mm["product"], a * b) and mm["Omega[1,2]"] == d(b, K) * a)
    matched = []
    for name in ("steinberg", "omega-r1", "leibniz", "max-only"):
        D = load_datum(catalog.payload(name))
        shape = infer_shape(D)
        if D.variant != SUM or shape is None or not datum_matches_shape(D, shape):
            continue
        matched.append(name)
        rep.check(f"rational_equivalence_{name}_{shape.name()}", verify_rational_equivalence(D, shape))
    rep.values["shape_matched_data"] = matched
    rng = random.Random(seed)
    ok = True
    for _ in range(10):
        z1 = _random_cycle(K, rng)
        z2 = _random_cycle(K, rng)
        for shape in (MN, ProductShape.parse("MxM")):
            lhs = cycle_class(z1 + z2, shape)
            rhs = cycle_class(z1, shape) + cycle_class(z2, shape)
            ok = ok and lhs.equals(rhs)
    rep.check("additivity_on_random_cycles", ok)


def _random_cycle(K, rng):
    a, b = K.gen("a"), K.gen("b")
    z = ZeroCycle(K)
    for _ in range(rng.randint(1, 3)):
        x = K.convert(rng.randint(-3, 3)) + a * rng.randint(-2, 2) + b * rng.randint(0, 1)
        y = K.convert(rng.choice([1, 2, 3, -1])) + b * rng.randint(0, 2) + a * rng.randint(0, 1)
        if K.is_zero(y):
            y = K.one
        z = z + ZeroCycle.point(K, (x, y), rng.choice([-2, -1, 1, 2]))
    return z


CASES = {
    "cor5.2-class": ("Cycle classes on MxN and MxM, rational equivalence, additivity", "pass", case_cor52),
    "phi-residue": ("Residue theorem for g1 dg2 dlog f with term-wise comparison", "pass", case_phi),
    "prop4.1": ("Steinberg datum over Q(zeta_12)(a)", "pass", case_steinberg),
    "prop4.4-r1": ("Omega datum with degree 2 and 5 trace terms", "pass", case_omega),
    "prop4.9": ("(t^2-1)/t^2 as a maximal-modulus datum", "pass", case_double_pole),
    "prop4.9-sum": ("(t^2-1)/t^2 rejected as a summational datum", "pass", case_double_pole_sum),
    "psi-lemma": ("Leibniz datum over Q(a,b)", "pass", case_psi),
}


def case_ids(filter_text=None):
    ids = sorted(CASES)
    if filter_text:
        ids = [i for i in ids if filter_text in i]
    return ids


def run_case(case_id, seed=0):
    desc, expected, fn = CASES[case_id]
    rep = Report(case_id, desc, expected)
    t0 = time.perf_counter()
    try:
        fn(rep, seed)
    except Exception as exc:  # a crash is a failed verdict, not a crashed suite
        rep.error = f"{type(exc).__name__}: {exc}"
    rep.seconds = time.perf_counter() - t0
    return rep


def thread_count(n_tasks):
    cap = os.environ.get("VERIFY_THREADS")
    try:
        cap = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        cap = 1
    return max(1, min(cap, n_tasks))


def run_suite(filter_text=None, seed=0):
    """Reports ordered by case id (completion order does not matter)."""
    ids = case_ids(filter_text)
    if not ids:
        return []
    with ThreadPoolExecutor(max_workers=thread_count(len(ids))) as pool:
        reports = list(pool.map(lambda i: run_case(i, seed), ids))
    return sorted(reports, key=lambda r: r.case_id)


def suite_json(reports, seed):
    return {
        "schema": "kgeo/suite-report/v1",
        "seed": seed,
        "passed": all(r.passed for r in reports),
        "cases": [r.to_json() for r in reports],
    }
