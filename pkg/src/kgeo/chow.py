"""Zero-cycles with modulus on products of the genus-zero pairs
M = (P^1, 2[inf]) and N = (P^1, [0] + [inf]).

The generalized Jacobians are Ga for M and Gm for N, so a closed point with
coordinates (a, b_1, ..., b_r) on M x N^r decomposes into a degree, a
Ga-part Tr(a), and for every nonempty subset S of the N-factors a Milnor part
{b_S} and a differential part Tr(a dlog b_S).  On M x M the point (a, b) gives
(degree, Tr a, Tr b, Tr ab, Tr(a db)).
"""

import re
from dataclasses import dataclass
from itertools import combinations

from .algebra.extension import Extension
from .errors import AlgebraError, InvalidDatum
from .forms import DifferentialForm, d, dlog, trace_form, wedge_all
from .line import INFINITY, Divisor, divisor_leq, point_at, principal_divisor, residue_field
from .relations import SUM, SymbolSum, SymbolTerm, dlog_invariant, evaluate_invariants, validate_datum
from .sections import evaluate_section

M, N = "M", "N"


@dataclass(frozen=True)
class ProductShape:
    factors: tuple

    @classmethod
    def parse(cls, text):
        s = text.replace(" ", "").replace("⊗", "x").replace("*", "x")
        if s == "MxM":
            return cls((M, M))
        m = re.fullmatch(r"M(?:xN(?:\^(\d+))?)?", s)
        if not m:
            raise InvalidDatum(f"unsupported shape {text!r}: use MxN^r or MxM")
        if "N" not in s:
            r = 0
        else:
            r = int(m.group(1)) if m.group(1) else 1
        return cls((M,) + (N,) * r)

    @property
    def is_mm(self):
        return self.factors == (M, M)

    @property
    def r(self):
        return sum(1 for x in self.factors if x == N)

    def name(self):
        if self.is_mm:
            return "MxM"
        return "M" if self.r == 0 else ("MxN" if self.r == 1 else f"MxN^{self.r}")

    def modulus(self, i, base):
        """The modulus divisor of the i-th factor."""
        if self.factors[i] == M:
            return Divisor({INFINITY: 2})
        return Divisor({point_at(base, 0): 1, INFINITY: 1})


@dataclass(frozen=True, eq=False)
class CyclePoint:
    field: object  # K or an Extension of K
    coords: tuple

    def same(self, other):
        return self.field == other.field and all(self.field.eq(x, y) for x, y in zip(self.coords, other.coords))

    @property
    def degree(self):
        return self.field.degree if isinstance(self.field, Extension) else 1

    def format(self):
        body = "(" + ", ".join(self.field.format(c) for c in self.coords) + ")"
        if isinstance(self.field, Extension):
            body += f"[{self.field.min_poly.format('u')}]"
        return body


class ZeroCycle:
    """Formal Z-combination of closed points off the modulus."""

    def __init__(self, base, terms=()):
        self.base = base
        merged = []
        for pt, m in terms:
            for i, (q, k) in enumerate(merged):
                if q.same(pt):
                    merged[i] = (q, k + m)
                    break
            else:
                merged.append((pt, m))
        self.terms = [(p, m) for p, m in merged if m]

    @classmethod
    def point(cls, base, coords, mult=1, field=None):
        field = field or base
        return cls(base, [(CyclePoint(field, tuple(field.convert(c) for c in coords)), mult)])

    def __add__(self, other):
        return ZeroCycle(self.base, self.terms + other.terms)

    def __neg__(self):
        return ZeroCycle(self.base, [(p, -m) for p, m in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n):
        return ZeroCycle(self.base, [(p, n * m) for p, m in self.terms])

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self):
        return sum(m * p.degree for p, m in self.terms)

    def format(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{m}[{p.format()}]" for p, m in self.terms).replace("+ -", "- ")

    def to_json(self):
        out = []
        for p, m in self.terms:
            entry = {"coords": [p.field.format(c) for c in p.coords], "mult": m}
            if isinstance(p.field, Extension):
                entry["min_poly"] = p.field.min_poly.format("u")
            out.append(entry)
        return out


def check_off_modulus(z, shape):
    for p, _ in z.terms:
        if len(p.coords) != len(shape.factors):
            raise InvalidDatum(f"point {p.format()} has {len(p.coords)} coordinates; shape {shape.name()} needs "
                               f"{len(shape.factors)}")
        for c, kind in zip(p.coords, shape.factors):
            if kind == N and p.field.is_zero(c):
                raise InvalidDatum(f"point {p.format()} meets the modulus [0] of an N-factor")
    # finite coordinates are automatic: points at infinity cannot be written down


# ---------------------------------------------------------------------------
# decomposition


class DecompositionVector:
    """Named components; forms and field elements compare exactly, Milnor parts formally."""

    def __init__(self, shape, base, components):
        self.shape = shape
        self.base = base
        self.components = dict(components)

    def __getitem__(self, key):
        return self.components[key]

    def keys(self):
        return list(self.components)

    def _add(self, other, sign):
        out = {}
        for k, v in self.components.items():
            w = other.components[k]
            if isinstance(v, int):
                out[k] = v + sign * w
            elif isinstance(v, SymbolSum):
                out[k] = v + (w if sign > 0 else -w)
            elif isinstance(v, DifferentialForm):
                out[k] = v + (w if sign > 0 else -w)
            elif k.startswith("K[") and not isinstance(v, SymbolSum):
                out[k] = v * w if sign > 0 else v * self.base.inv(w)
            else:
                out[k] = v + w if sign > 0 else v - w
        return DecompositionVector(self.shape, self.base, out)

    def __add__(self, other):
        return self._add(other, 1)

    def __sub__(self, other):
        return self._add(other, -1)

    def component_is_trivial(self, key):
        v = self.components[key]
        K = self.base
        if isinstance(v, int):
            return v == 0
        if isinstance(v, DifferentialForm):
            return v.is_zero()
        if isinstance(v, SymbolSum):
            return _milnor_trivial(v)
        if key.startswith("K["):
            return K.eq(v, K.one)
        return K.is_zero(v)

    def equals(self, other):
        """Exact equality; Milnor parts of degree >= 2 are compared by their invariants."""
        diff = self - other
        return all(diff.component_is_trivial(k) for k in diff.keys())

    def nonzero_components(self):
        return [k for k in self.keys() if k != "degree" and not self.component_is_trivial(k)]

    def to_json(self):
        out = {}
        K = self.base
        for k, v in self.components.items():
            if isinstance(v, int):
                out[k] = v
            elif isinstance(v, DifferentialForm):
                out[k] = v.format()
            elif isinstance(v, SymbolSum):
                out[k] = {"symbols": v.to_json()["terms"], "invariants_trivial": _milnor_trivial(v)}
            else:
                out[k] = K.format(v)
        return out


def _milnor_trivial(s):
    """Necessary-condition check for a formal Milnor symbol sum: all its invariants vanish."""
    if not s.terms:
        return True
    vals, _ = evaluate_invariants(s)
    return all(zero for _, _, zero in vals)


def subsets(r):
    out = []
    for k in range(1, r + 1):
        out.extend(combinations(range(1, r + 1), k))
    return out


def subset_label(S):
    return ",".join(str(i) for i in S)


def cycle_class(z, shape):
    """The decomposition vector of a zero-cycle (additive in the cycle)."""
    if isinstance(shape, str):
        shape = ProductShape.parse(shape)
    check_off_modulus(z, shape)
    K = z.base
    comps = {"degree": z.degree}
    if shape.is_mm:
        ga1, ga2, prod = K.zero, K.zero, K.zero
        omega = DifferentialForm.zero(K, 1)
        for p, m in z.terms:
            L = p.field
            a, b = p.coords
            ga1 = ga1 + _tr(L, a) * m
            ga2 = ga2 + _tr(L, b) * m
            prod = prod + _tr(L, a * b) * m
            omega = omega + trace_form(L, d(b, L) * a, K) * m
        comps.update({"Ga[1]": ga1, "Ga[2]": ga2, "product": prod, "Omega[1,2]": omega})
        return DecompositionVector(shape, K, comps)

    r = shape.r
    ga = K.zero
    for p, m in z.terms:
        ga = ga + _tr(p.field, p.coords[0]) * m
    comps["Ga"] = ga
    for S in subsets(r):
        lab = subset_label(S)
        if len(S) == 1:
            val = K.one
            for p, m in z.terms:
                nb = _norm(p.field, p.coords[S[0]])
                val = val * (nb ** m if m >= 0 else K.inv(nb) ** (-m))
            comps[f"K[{lab}]"] = val
        else:
            terms = [SymbolTerm(m, p.field, tuple(p.coords[i] for i in S)) for p, m in z.terms]
            comps[f"K[{lab}]"] = SymbolSum(K, ("Gm",) * len(S), terms)
        omega = DifferentialForm.zero(K, len(S))
        for p, m in z.terms:
            L = p.field
            w = wedge_all([dlog(p.coords[i], L) for i in S], L) * p.coords[0]
            omega = omega + trace_form(L, w, K) * m
        comps[f"Omega[{lab}]"] = omega
    return DecompositionVector(shape, K, comps)


def _tr(L, x):
    return L.trace(x) if isinstance(L, Extension) else x


def _norm(L, x):
    return L.norm(x) if isinstance(L, Extension) else x


# ---------------------------------------------------------------------------
# relation data as rational equivalences


def datum_matches_shape(datum, shape):
    """Sections land in the factors of the shape with moduli inside the factor moduli."""
    if len(datum.sections) != len(shape.factors):
        return False
    K = datum.base
    for i, (s, kind) in enumerate(zip(datum.sections, shape.factors)):
        want = "Ga" if kind == M else "Gm"
        if s.slot != want:
            return False
        if not divisor_leq(s.modulus, shape.modulus(i, K)):
            return False
    return True


def push_datum_to_cycle(datum):
    """sum over c of v_c(f) [(g_1(c), ..., g_n(c))]."""
    K = datum.base
    div = principal_divisor(datum.f, datum.hints)
    terms = []
    for p, v in div.items():
        if datum.modulus.mult(p):
            raise InvalidDatum(f"div(f) meets the modulus at {p!r}")
        L = K if p.is_infinity or p.degree == 1 else residue_field(p)[0]
        coords = tuple(L.convert(evaluate_section(s, p)) for s in datum.sections)
        terms.append((CyclePoint(L, coords), v))
    return ZeroCycle(K, terms)


def infer_shape(datum):
    sig = datum.signature
    if sig == ("Ga", "Ga"):
        return ProductShape((M, M))
    if sig and sig[0] == "Ga" and all(x == "Gm" for x in sig[1:]):
        return ProductShape((M,) + (N,) * (len(sig) - 1))
    return None


def verify_rational_equivalence(datum, shape=None):
    """True iff the pushed cycle of a valid Sum datum has trivial class in every component."""
    if shape is None:
        shape = infer_shape(datum)
    elif isinstance(shape, str):
        shape = ProductShape.parse(shape)
    if shape is None or not datum_matches_shape(datum, shape):
        raise InvalidDatum("datum does not match a supported product shape")
    if datum.variant != SUM or not validate_datum(datum).valid:
        raise InvalidDatum("rational equivalence is checked for valid Sum data")
    z = push_datum_to_cycle(datum)
    cls = cycle_class(z, shape)
    return cls.components["degree"] == 0 and not cls.nonzero_components()
