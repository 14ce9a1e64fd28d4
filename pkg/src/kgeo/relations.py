"""Relation data of geometric type on P^1: validation, expansion into symbol
sums, and the invariant maps that detect their vanishing.

A datum is ((P^1, m), {m_i}, f, {g_i}) with f in G(P^1, m) and m dominating
the section moduli (by their sum for the summational variant, by their
pointwise maximum for the maximal one).  Its relation element is
sum over c of v_c(f) Tr_{k(c)/K}(g_1(c) x ... x g_n(c)).
"""

from dataclasses import dataclass, field as dc_field

from .algebra.extension import Extension
from .errors import AlgebraError, InvalidDatum
from .forms import (
    DifferentialForm,
    d,
    dlog,
    residue_at,
    traced_residue,
    residue_sum,
    trace_form,
    wedge,
    wedge_all,
)
from .line import (
    INFINITY,
    Divisor,
    as_line_function,
    congruence_defects,
    divisor_leq,
    divisor_max,
    divisor_sum,
    evaluate_at,
    factor_supported,
    principal_divisor,
    residue_field,
    valuation,
)
from .sections import Section, evaluate_section, section_minimal_modulus

SUM, MAX = "sum", "max"

GA_RULE = "Ga minimal modulus = pole order + 1 at each pole"
GM_RULE = "Gm minimal modulus = reduced support of the divisor"


@dataclass
class RelationDatum:
    variant: str
    modulus: Divisor
    f: object  # RationalFunction
    sections: list
    hints: tuple = ()
    name: str = ""

    def __post_init__(self):
        if self.variant not in (SUM, MAX):
            raise InvalidDatum(f"variant must be 'sum' or 'max', not {self.variant!r}")
        self.sections = list(self.sections)
        self.hints = tuple(self.hints)

    @property
    def signature(self):
        return tuple(s.slot for s in self.sections)

    @property
    def function_field(self):
        return self.f.field

    @property
    def base(self):
        return self.f.field.base

    def with_variant(self, variant):
        return RelationDatum(variant, self.modulus, self.f, self.sections, self.hints, self.name)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Condition:
    name: str
    passed: bool
    detail: str = ""
    witnesses: list = dc_field(default_factory=list)

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "witnesses": self.witnesses}


@dataclass
class ValidationReport:
    variant: str
    conditions: list
    assumptions: list

    @property
    def valid(self):
        return all(c.passed for c in self.conditions)

    def condition(self, name):
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.conditions if not c.passed]

    def to_json(self):
        return {
            "variant": self.variant,
            "valid": self.valid,
            "conditions": [c.to_json() for c in self.conditions],
            "assumptions": list(self.assumptions),
        }


def _deficits(required, available):
    """Points where ``required`` exceeds ``available``."""
    out = []
    for p, m in required.items():
        have = available.mult(p)
        if have < m:
            out.append({"point": p.label(), "needs": m, "has": have})
    return out


def datum_assumptions(datum):
    out = []
    kinds = {s.kind for s in datum.sections}
    if "Ga" in kinds:
        out.append(GA_RULE)
    if "Gm" in kinds:
        out.append(GM_RULE)
    return out


def validate_datum(datum):
    """Check every condition of a relation datum; failures are report content."""
    conds = []
    f, m = datum.f, datum.modulus
    one = f.field.one
    conds.append(Condition("f_not_one", not (f == one), "f must differ from 1"))
    conds.append(Condition("modulus_effective", m.is_effective() or m.is_zero()))

    defects = congruence_defects(f, m)
    conds.append(Condition(
        "f_in_G",
        not defects,
        "v_c(f - 1) >= mult_m(c) at every modulus point",
        [{"point": p.label(), "needs": need, "has": have} for p, need, have in defects],
    ))

    minimal = []
    for i, s in enumerate(datum.sections):
        mm = section_minimal_modulus(s, datum.hints)
        minimal.append(mm)
        wit = _deficits(mm, s.modulus)
        conds.append(Condition(
            f"section_{i}_sc_modulus",
            not wit,
            f"{s.kind} section {s.expr!r}: minimal modulus {mm!r} <= declared {s.modulus!r}",
            wit,
        ))

    declared = [s.modulus for s in datum.sections]
    if datum.variant == SUM:
        bound = divisor_sum(declared)
        label = "modulus_dominates_sum"
    else:
        bound = divisor_max(declared)
        label = "modulus_dominates_max"
    wit = _deficits(bound, m)
    conds.append(Condition(label, not wit, f"m >= {bound!r}", wit))

    # points of div(f) inside supp(m) contradict f = 1 mod m
    clash = []
    if not defects and not (f == one):
        div = principal_divisor(f, datum.hints)
        for p, v in div.items():
            if m.mult(p):
                clash.append({"point": p.label(), "valuation": v})
    conds.append(Condition("div_f_off_modulus", not clash, "div(f) avoids supp(m)", clash))

    assumptions = datum_assumptions(datum)
    for s in datum.sections:
        for p in s.modulus.support():
            if p.certificate.assumed:
                assumptions.append(f"irreducibility assumed for {p.label()}")
    return ValidationReport(datum.variant, conds, sorted(set(assumptions)))


# ---------------------------------------------------------------------------
# symbol sums


@dataclass(frozen=True, eq=False)
class SymbolTerm:
    """coeff * Tr_{field/K}{v_1, ..., v_n}_{field}."""

    coeff: int
    field: object
    values: tuple
    point: object = None

    def is_rational(self, base):
        return not isinstance(self.field, Extension)

    def format(self):
        body = "{" + ", ".join(self.field.format(v) for v in self.values) + "}"
        if isinstance(self.field, Extension):
            body = f"Tr[{self.field.min_poly.format('u')}]{body}"
        return body

    def same_symbol(self, other):
        if self.field != other.field or len(self.values) != len(other.values):
            return False
        return all(self.field.eq(x, y) for x, y in zip(self.values, other.values))

    def to_json(self):
        out = {
            "coeff": self.coeff,
            "values": [self.field.format(v) for v in self.values],
        }
        if isinstance(self.field, Extension):
            out["min_poly"] = self.field.min_poly.format("u")
        if self.point is not None:
            out["point"] = self.point.label()
        return out


class SymbolSum:
    """A formal Z-combination of symbols, each wrapped in a trace to the base field.

    No reduction by multilinearity is performed here; equal symbols (same
    field, equal entries) are merged.
    """

    def __init__(self, base, signature, terms=()):
        self.base = base
        self.signature = tuple(signature)
        merged = []
        for t in terms:
            if len(t.values) != len(self.signature):
                raise AlgebraError("symbol length does not match the signature")
            for i, u in enumerate(merged):
                if u.same_symbol(t):
                    merged[i] = SymbolTerm(u.coeff + t.coeff, u.field, u.values, u.point)
                    break
            else:
                merged.append(t)
        self.terms = [t for t in merged if t.coeff]

    @classmethod
    def from_symbols(cls, base, signature, symbols):
        """Build from [(coeff, (v1, ..., vn))] over the base field."""
        terms = [SymbolTerm(c, base, tuple(base.convert(v) for v in vals)) for c, vals in symbols]
        return cls(base, signature, terms)

    def _check(self, other):
        if other.signature != self.signature or other.base != self.base:
            raise AlgebraError("symbol sums with different signature or base")

    def __add__(self, other):
        self._check(other)
        return SymbolSum(self.base, self.signature, self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n):
        return SymbolSum(self.base, self.signature,
                         [SymbolTerm(n * t.coeff, t.field, t.values, t.point) for t in self.terms])

    __rmul__ = lambda self, n: self.scale(n)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def same_terms(self, other):
        """Term-by-term equality (no multilinear reduction)."""
        return not (self - other).terms

    def format(self):
        if not self.terms:
            return "0"
        out = ""
        for i, t in enumerate(self.terms):
            c = t.coeff
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            if i == 0:
                out += ("-" if c < 0 else "") + mag + t.format()
            else:
                out += (" - " if c < 0 else " + ") + mag + t.format()
        return out

    def to_json(self):
        return {"signature": list(self.signature), "terms": [t.to_json() for t in self.terms]}

    def __repr__(self):
        return f"SymbolSum({self.format()})"


def relation_terms(datum):
    """One unmerged SymbolTerm per point of div(f)."""
    K = datum.base
    div = principal_divisor(datum.f, datum.hints)
    terms = []
    for p, v in div.items():
        if datum.modulus.mult(p):
            raise InvalidDatum(f"div(f) meets the modulus at {p!r}; f is not 1 there")
        L = K if p.is_infinity or p.degree == 1 else residue_field(p)[0]
        values = tuple(evaluate_section(s, p) for s in datum.sections)
        terms.append(SymbolTerm(v, L, values, p))
    return terms


def expand_relation(datum):
    """The relation element as a SymbolSum (equal symbols merged)."""
    return SymbolSum(datum.base, datum.signature, relation_terms(datum))


# ---------------------------------------------------------------------------
# invariants


def _require(s, pattern, name):
    if not pattern(s.signature):
        raise AlgebraError(f"{name} does not apply to signature {s.signature}")


def _is_ga_gm(sig):
    return len(sig) >= 1 and sig[0] == "Ga" and all(x == "Gm" for x in sig[1:])


def omega_invariant(s):
    """sum coeff * Tr(a dlog b_1 ^ ... ^ dlog b_r) in Omega^r_K."""
    _require(s, _is_ga_gm, "omega_invariant")
    K = s.base
    r = len(s.signature) - 1
    total = DifferentialForm.zero(K, r)
    for t in s.terms:
        L = t.field
        a, bs = t.values[0], t.values[1:]
        w = wedge_all([dlog(b, L) for b in bs], L) * a
        total = total + trace_form(L, w, K) * t.coeff
    return total


def gaga_invariant(s):
    """(sum coeff * Tr(a db), sum coeff * Tr(ab)) in Omega^1_K x K."""
    _require(s, lambda sig: sig == ("Ga", "Ga"), "gaga_invariant")
    K = s.base
    form = DifferentialForm.zero(K, 1)
    prod = K.zero
    for t in s.terms:
        L = t.field
        a, b = t.values
        form = form + trace_form(L, d(b, L) * a, K) * t.coeff
        tr = L.trace(a * b) if isinstance(L, Extension) else a * b
        prod = prod + tr * t.coeff
    return form, prod


def dlog_invariant(s):
    """sum coeff * Tr(dlog b_1 ^ ... ^ dlog b_r) in Omega^r_K."""
    _require(s, lambda sig: len(sig) >= 1 and all(x == "Gm" for x in sig), "dlog_invariant")
    K = s.base
    total = DifferentialForm.zero(K, len(s.signature))
    for t in s.terms:
        L = t.field
        w = wedge_all([dlog(b, L) for b in t.values], L)
        total = total + trace_form(L, w, K) * t.coeff
    return total


def single_slot_invariant(s):
    """Ga: sum coeff * Tr(a) in K.  Gm: prod N(b)^coeff in K^*."""
    _require(s, lambda sig: len(sig) == 1, "single_slot_invariant")
    K = s.base
    if s.signature[0] == "Ga":
        out = K.zero
        for t in s.terms:
            a = t.values[0]
            out = out + (t.field.trace(a) if isinstance(t.field, Extension) else a) * t.coeff
        return out
    out = K.one
    for t in s.terms:
        b = t.values[0]
        nb = t.field.norm(b) if isinstance(t.field, Extension) else b
        out = out * (nb ** t.coeff if t.coeff >= 0 else K.inv(nb) ** (-t.coeff))
    return out


def tame_symbol(x, y, place):
    """(-1)^{v(x)v(y)} y^{v(x)} / x^{v(y)} evaluated at the place (functions on the a-line).

    Normalized so that the symbol {pi, u} of a uniformizer and a unit goes to u.
    """
    vx, vy = valuation(x, place), valuation(y, place)
    u = (y ** vx) / (x ** vy)
    if (vx * vy) % 2:
        u = -u
    return evaluate_at(u, place)


def tame_places(s, hints=()):
    """Closed points of the a-line met by the entries of a (Gm, Gm) symbol sum."""
    pts = set()
    for t in s.terms:
        for v in t.values:
            x = as_line_function(v, s.base)
            pts.update(principal_divisor(x, hints).support())
    pts.add(INFINITY)
    return sorted(pts, key=lambda p: p.sort_key())


def tame_profile(s, places=None, hints=()):
    """{place: (residue field, prod of tame symbols ** coeff)} for a (Gm, Gm) sum over C(a)."""
    _require(s, lambda sig: sig == ("Gm", "Gm"), "tame_profile")
    for t in s.terms:
        if isinstance(t.field, Extension):
            raise AlgebraError("tame profiles are computed for rational symbols only")
    if places is None:
        places = tame_places(s, hints)
    pairs = [(t.coeff, as_line_function(t.values[0], s.base), as_line_function(t.values[1], s.base))
             for t in s.terms]
    out = {}
    for p in places:
        C = s.base.constants
        L = C if p.is_infinity or p.degree == 1 else residue_field(p)[0]
        acc = L.one
        for c, x, y in pairs:
            val = tame_symbol(x, y, p)
            acc = acc * (val ** c if c >= 0 else L.inv(val) ** (-c))
        out[p] = (L, acc)
    return out


def profile_is_trivial(profile):
    return all(L.eq(v, L.one) for L, v in profile.values())


# ---------------------------------------------------------------------------
# exact equality in K (x)_Z K for Ga-slots


def _linear_coordinates(values, K):
    """A Q-linear injective coordinate map applied to each value (dict monomial -> Fraction)."""
    C = K.constants
    if not getattr(K, "variables", ()):
        return [{(i,): q for i, q in enumerate(C.coeffs(v)) if q} for v in values]
    den = K._ring.one
    for v in values:
        den = den.lcm(v.denom)
    out = []
    for v in values:
        num = v.numer * den.exquo(v.denom)
        coords = {}
        for mono, c in num.terms():
            for i, q in enumerate(C.coeffs(c)):
                if q:
                    coords[mono + (i,)] = q
        out.append(coords)
    return out


def multilinear_is_zero(s):
    """Decide whether a Ga-only symbol sum vanishes in K (x)_Z ... (x)_Z K.

    K is a Q-vector space, so the tensor product over Z equals the one over Q;
    clearing a common denominator per slot gives an injective Q-linear map into
    a polynomial space, and the image is compared coordinate by coordinate.
    """
    if any(x != "Ga" for x in s.signature):
        raise AlgebraError("multilinear decision needs Ga slots only")
    if any(isinstance(t.field, Extension) for t in s.terms):
        raise AlgebraError("multilinear decision is for rational symbols")
    K = s.base
    n = len(s.signature)
    slot_coords = [_linear_coordinates([t.values[i] for t in s.terms], K) for i in range(n)]
    total = {}
    for j, t in enumerate(s.terms):
        acc = {(): t.coeff}
        for i in range(n):
            nxt = {}
            for k1, c1 in acc.items():
                for k2, c2 in slot_coords[i][j].items():
                    key = k1 + (k2,)
                    nxt[key] = nxt.get(key, 0) + c1 * c2
            acc = nxt
        for k, c in acc.items():
            total[k] = total.get(k, 0) + c
    return all(c == 0 for c in total.values())


def multilinear_equal(s1, s2):
    return multilinear_is_zero(s1 - s2)


# ---------------------------------------------------------------------------
# residue cross-check for (Ga, Ga) data


@dataclass
class ResidueCheck:
    total_zero: bool
    cross_checks: dict
    termwise: list  # [(point label, matches)]
    regular_sum_zero: bool

    @property
    def ok(self):
        return self.total_zero and all(self.cross_checks.values()) and all(m for _, m in self.termwise) \
            and self.regular_sum_zero

    def to_json(self):
        return {
            "residue_sum_zero": self.total_zero,
            "cross_checks": dict(sorted(self.cross_checks.items())),
            "termwise": [{"point": p, "matches": m} for p, m in self.termwise],
            "regular_sum_zero": self.regular_sum_zero,
        }


def residue_form(datum):
    """g_1 dg_2 ^ dlog f over K(t)."""
    F = datum.function_field
    g1, g2 = datum.sections[0].expr, datum.sections[1].expr
    return wedge(d(g2, F) * g1, dlog(datum.f, F))


def residue_form_pieces(datum):
    """g_1 dg_2 ^ dlog f as weighted pieces from f = u * prod q_i^(m_i).

    dlog f = dlog u + sum m_i dlog q_i, so the pieces are g_1 dg_2 ^ dlog q_i
    with weight m_i, plus g_1 dg_2 ^ dlog u.  Each piece has a small
    denominator, and its finite poles lie among the zero of q_i and the poles
    of g_1 dg_2.  Entries are (weight, form, candidate points).
    """
    F = datum.function_field
    K = datum.base
    g1, g2 = datum.sections[0].expr, datum.sections[1].expr
    a = d(g2, F) * g1
    common = {}
    for _, c in a.items():
        for p, _m in factor_supported(c.den, datum.hints).factors:
            common[p] = True
    f = datum.f
    pieces = []
    unit = K.one
    for poly, sign in ((f.num, 1), (f.den, -1)):
        fac = factor_supported(poly, datum.hints)
        unit = unit * fac.unit if sign > 0 else unit * K.inv(fac.unit)
        for p, m in fac.factors:
            pts = sorted(set(common) | {p}, key=lambda q: q.sort_key())
            pieces.append((sign * m, wedge(a, dlog(F.convert(p.poly), F)), pts))
    u = F.convert(unit)
    if not dlog(u, F).is_zero():
        pieces.append((1, wedge(a, dlog(u, F)), sorted(common, key=lambda q: q.sort_key())))
    if not pieces:
        pieces.append((1, DifferentialForm.zero(F, 2), []))
    return pieces


def residue_check(datum, terms=None):
    """Compare Tr Res_c(g_1 dg_2 dlog f) with v_c(f) Tr(g_1(c) dg_2(c)) at every point."""
    if datum.signature != ("Ga", "Ga"):
        raise AlgebraError("the residue check applies to (Ga, Ga) data")
    K = datum.base
    w = residue_form_pieces(datum)
    rep = residue_sum(w, datum.hints)
    # per point, before symbols from different points are merged
    expected = {}
    for t in (relation_terms(datum) if terms is None else terms):
        a, b = t.values
        expected[t.point] = trace_form(t.field, d(b, t.field) * a, K) * t.coeff
    seen = {p: f for p, f in rep.per_point}
    seen[INFINITY] = rep.at_infinity
    termwise = []
    for p in sorted(set(seen) | set(expected), key=lambda q: q.sort_key()):
        got = seen.get(p)
        if got is None:
            got = DifferentialForm.zero(K, 1)
            for m, x, _pts in w:
                got = got + traced_residue(x, p) * m
        want = expected.get(p, DifferentialForm.zero(K, 1))
        termwise.append((p.label(), got == want))
    regular = DifferentialForm.zero(K, 1)
    for f in expected.values():
        regular = regular + f
    return ResidueCheck(rep.total.is_zero(), rep.cross_check, termwise, regular.is_zero())


# ---------------------------------------------------------------------------
# vanishing report


@dataclass
class InvariantResult:
    name: str
    value: object
    zero: bool
    asserted: bool

    def to_json(self):
        return {"name": self.name, "value": self.value, "zero": self.zero, "asserted": self.asserted}


@dataclass
class VanishingReport:
    variant: str
    validation: ValidationReport
    expansion: SymbolSum
    invariants: list
    notes: list

    @property
    def passed(self):
        if not self.validation.valid:
            return False
        return all(r.zero for r in self.invariants if r.asserted)

    def invariant(self, name):
        for r in self.invariants:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self):
        return {
            "variant": self.variant,
            "validation": self.validation.to_json(),
            "expansion": self.expansion.to_json() if self.expansion is not None else None,
            "invariants": [r.to_json() for r in self.invariants],
            "notes": list(self.notes),
            "passed": self.passed,
        }


def _fmt_scalar(K, x):
    return K.format(x)


def evaluate_invariants(s, hints=()):
    """[(name, json value, is_zero)] for every invariant that applies to the signature."""
    K = s.base
    sig = s.signature
    out = []
    notes = []
    if _is_ga_gm(sig) and len(sig) >= 2:
        w = omega_invariant(s)
        out.append(("omega", w.format(), w.is_zero()))
    if sig == ("Ga", "Ga"):
        w, p = gaga_invariant(s)
        out.append(("gaga", {"form": w.format(), "product": _fmt_scalar(K, p)}, w.is_zero() and K.is_zero(p)))
    if len(sig) >= 1 and all(x == "Gm" for x in sig):
        w = dlog_invariant(s)
        out.append(("dlog", w.format(), w.is_zero()))
        if sig == ("Gm", "Gm"):
            single = len(getattr(K, "variables", ())) == 1
            rational = not any(isinstance(t.field, Extension) for t in s.terms)
            if single and rational:
                prof = tame_profile(s, hints=hints)
                val = {p.label(K.variables[0]): L.format(v) for p, (L, v) in prof.items()}
                out.append(("tame", dict(sorted(val.items())), profile_is_trivial(prof)))
            else:
                notes.append("tame profile skipped: needs one variable and rational symbols")
    if len(sig) == 1:
        v = single_slot_invariant(s)
        if sig[0] == "Ga":
            out.append(("trace", _fmt_scalar(K, v), K.is_zero(v)))
        else:
            out.append(("norm", _fmt_scalar(K, v), K.eq(v, K.one)))
    if not out:
        notes.append(f"no invariant implemented for signature {','.join(sig)}")
    return out, notes


def verify_vanishing(datum):
    """Validate, expand and evaluate every admissible invariant.

    Sum-valid data must vanish under every invariant; for the max variant the
    values are reported without being asserted.
    """
    report = validate_datum(datum)
    notes = []
    if not report.valid:
        return VanishingReport(datum.variant, report, None, [], ["datum is not valid; nothing expanded"])
    terms = relation_terms(datum)
    s = SymbolSum(datum.base, datum.signature, terms)
    asserted = datum.variant == SUM
    results = []
    vals, more = evaluate_invariants(s)
    notes.extend(more)
    for name, value, zero in vals:
        results.append(InvariantResult(name, value, zero, asserted))
    if datum.signature == ("Ga", "Ga"):
        rc = residue_check(datum, terms)
        results.append(InvariantResult("residue", rc.to_json(), rc.ok, asserted))
    if not asserted:
        notes.append("max variant: invariant values are reported, not asserted")
    return VanishingReport(datum.variant, report, s, results, notes)
