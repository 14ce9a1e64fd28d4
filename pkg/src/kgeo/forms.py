"""Absolute Kähler differentials over Q, written on the differentials of the
transcendence basis (and dt for forms on the projective line).

Basis differentials are ordered as the field lists its variables, with t last
for forms over K(t).  With that ordering the residue of h dx_J ^ dt at a point
is Res(h) dx_J, i.e. alpha ^ dlog(pi) maps to alpha.
"""

from itertools import combinations

from .algebra.extension import Extension
from .algebra.upoly import UPoly
from .errors import AlgebraError, PoleError
from .line import (
    INFINITY,
    FunctionField,
    RationalFunction,
    factor_supported,
    residue_field,
)


def _sort_basis(basis, order):
    """Sort a tuple of variable names; returns (sign, sorted) or (0, None) on repeats."""
    if len(set(basis)) != len(basis):
        return 0, None
    idx = []
    for v in basis:
        try:
            idx.append(order.index(v))
        except ValueError:
            raise AlgebraError(f"d{v} is not a basis differential of this field") from None
    sign = 1
    idx = list(idx)
    # bubble sort keeps track of the permutation sign
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(order[i] for i in idx)


class DifferentialForm:
    """A homogeneous r-form sum c_J dx_J over a field of the package protocol."""

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree, terms=None):
        self.field = field
        self.degree = degree
        order = tuple(field.variables)
        clean = {}
        for basis, c in (terms or {}).items():
            basis = tuple(basis)
            if len(basis) != degree:
                raise AlgebraError(f"basis {basis} does not have degree {degree}")
            sign, key = _sort_basis(basis, order)
            if not sign:
                continue
            c = field.convert(c)
            if sign < 0:
                c = -c
            clean[key] = clean[key] + c if key in clean else c
        self.terms = {k: v for k, v in clean.items() if not field.is_zero(v)}

    @classmethod
    def zero(cls, field, degree):
        return cls(field, degree, {})

    @classmethod
    def scalar(cls, field, c):
        return cls(field, 0, {(): c})

    def items(self):
        order = tuple(self.field.variables)
        return sorted(self.terms.items(), key=lambda kv: [order.index(v) for v in kv[0]])

    def coeff(self, basis):
        sign, key = _sort_basis(tuple(basis), tuple(self.field.variables))
        if not sign:
            return self.field.zero
        c = self.terms.get(key, self.field.zero)
        return c if sign > 0 else -c

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, DifferentialForm):
            raise TypeError("expected a DifferentialForm")
        if other.field != self.field:
            raise AlgebraError("forms over different fields")
        if other.degree != self.degree and self.terms and other.terms:
            raise AlgebraError("adding forms of different degree")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        deg = self.degree if self.terms else other.degree
        return DifferentialForm(self.field, deg, out)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialForm(self.field, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        """Multiplication by a scalar of the field."""
        if isinstance(c, DifferentialForm):
            return wedge(self, c)
        c = self.field.convert(c)
        return DifferentialForm(self.field, self.degree, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if other.field != self.field:
            return False
        return (self - other).is_zero() if (self.degree == other.degree or not self or not other) else False

    def __hash__(self):
        return hash(tuple((k, self.field.key(v)) for k, v in self.items()))

    def map_coeffs(self, fn, field):
        return DifferentialForm(field, self.degree, {k: fn(v) for k, v in self.terms.items()})

    def change_field(self, field):
        return self.map_coeffs(field.convert, field)

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for basis, c in self.items():
            mono = "^".join(f"d{v}" for v in basis)
            cs = self.field.format(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{self.field.format_coeff(c)}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"<{self.degree}-form {self.format()}>"


def d(x, field):
    """Exterior derivative of a field element (a 1-form)."""
    x = field.convert(x)
    terms = {}
    for v in field.variables:
        c = field.diff(x, v)
        if not field.is_zero(c):
            terms[(v,)] = c
    return DifferentialForm(field, 1, terms)


def dlog(x, field):
    x = field.convert(x)
    if field.is_zero(x):
        raise AlgebraError("dlog of zero")
    if hasattr(field, "log_diff"):
        terms = {}
        for v in field.variables:
            c = field.log_diff(x, v)
            if not field.is_zero(c):
                terms[(v,)] = c
        return DifferentialForm(field, 1, terms)
    return d(x, field) * field.inv(x)


def wedge(w1, w2):
    if w1.field != w2.field:
        raise AlgebraError("wedge of forms over different fields")
    F = w1.field
    out = {}
    order = tuple(F.variables)
    for b1, c1 in w1.terms.items():
        for b2, c2 in w2.terms.items():
            sign, key = _sort_basis(b1 + b2, order)
            if not sign:
                continue
            c = c1 * c2
            if sign < 0:
                c = -c
            out[key] = out[key] + c if key in out else c
    return DifferentialForm(F, w1.degree + w2.degree, out)


def wedge_all(forms, field):
    out = DifferentialForm.scalar(field, 1)
    for w in forms:
        out = wedge(out, w)
    return out


def exterior_d(w):
    """d of a form: d(c dx_J) = dc ^ dx_J."""
    F = w.field
    out = DifferentialForm.zero(F, w.degree + 1)
    for basis, c in w.terms.items():
        dc = d(c, F)
        out = out + wedge(dc, DifferentialForm(F, w.degree, {basis: F.one}))
    return out


def trace_form(L, w, base=None):
    """Tr_{L/K} applied coefficientwise; L may also be the base field itself (identity)."""
    if isinstance(L, Extension):
        return w.map_coeffs(L.trace, L.base)
    return w.change_field(base or L)


def basis_forms(field, degree):
    """All sorted basis r-subsets of the field's differentials."""
    return [tuple(c) for c in combinations(field.variables, degree)]


# ---------------------------------------------------------------------------
# residues on P^1


def _taylor(P, theta, L, k):
    """First k Taylor coefficients of P at theta, by repeated synthetic division."""
    out = []
    cur = [L.convert(c) for c in P.coeffs]
    for _ in range(k):
        if not cur:
            out.append(L.zero)
            continue
        acc = L.zero
        quo = []
        for c in reversed(cur):
            acc = acc * theta + c
            quo.append(acc)
        out.append(quo.pop())
        cur = quo[::-1]
    return out


def _laurent_residue(num, den, q, theta, L):
    """Coefficient of s^-1 in num(theta+s)/den(theta+s) at a root theta of q.

    Only num mod q^e and den mod q^(2e) matter (e the pole order), which keeps
    the arithmetic in k(c) small.
    """
    if not num:
        return L.zero
    e, _ = den.multiplicity(q)
    if e == 0:
        return L.zero
    qe = q ** e
    n_coeffs = _taylor(num % qe, theta, L, e)
    d_coeffs = _taylor(den % (qe * qe), theta, L, 2 * e)[e:]
    # power series inverse of den(theta+s)/s^e up to s^(e-1)
    inv0 = L.inv(d_coeffs[0])
    inv = [inv0]
    for k in range(1, e):
        acc = L.zero
        for j in range(1, k + 1):
            acc = acc + d_coeffs[j] * inv[k - j]
        inv.append(-(acc * inv0))
    res = L.zero
    for i in range(e):
        res = res + n_coeffs[i] * inv[e - 1 - i]
    return res


def _residue_infinity_scalar(h):
    """Res at infinity of h(t) dt via s = 1/t: dt = -ds/s^2."""
    F = h.field.base
    num, den = h.num, h.den
    # h(1/s) = s^(dd-dn) * num_rev(s)/den_rev(s)
    dn, dd = num.degree, den.degree
    nr, dr = num.reverse(), den.reverse()
    # -h(1/s)/s^2 = -s^(dd-dn-2) nr/dr ; dr(0) = lc(den) != 0
    shift = dd - dn - 2
    if shift >= 0:
        return F.zero
    need = -shift - 1  # coefficient of s^need in nr/dr
    inv0 = F.inv(dr.coeff(0))
    inv = [inv0]
    for k in range(1, need + 1):
        acc = F.zero
        for j in range(1, k + 1):
            acc = acc + dr.coeff(j) * inv[k - j]
        inv.append(-(acc * inv0))
    c = F.zero
    for i in range(need + 1):
        c = c + nr.coeff(i) * inv[need - i]
    return -c


def _split_dt(w):
    """[(basis without t, h)] for terms of w containing dt (t is last in the order)."""
    F = w.field
    if not isinstance(F, FunctionField):
        raise AlgebraError("residues need a form over K(t)")
    out = []
    for basis, h in w.items():
        if basis and basis[-1] == F.var:
            out.append((basis[:-1], h))
    return out


def residue_at(w, point):
    """Res_c(w) as a form over the residue field k(c)."""
    F = w.field
    K = F.base
    parts = _split_dt(w)
    if point.is_infinity:
        terms = {}
        for basis, h in parts:
            terms[basis] = _residue_infinity_scalar(h)
        return DifferentialForm(K, w.degree - 1, terms)
    L, theta = residue_field(point)
    terms = {}
    for basis, h in parts:
        terms[basis] = _laurent_residue(h.num, h.den, point.poly, theta, L)
    return DifferentialForm(L, w.degree - 1, terms)


def pole_points(w, hints=()):
    """Finite closed points where some coefficient of w has a pole."""
    pts = {}
    for _, h in w.terms.items():
        if h.den.degree > 0:
            for p, _m in factor_supported(h.den, hints).factors:
                pts[p] = True
    return sorted(pts, key=lambda p: p.sort_key())


class ResidueReport:
    def __init__(self, total, finite, at_infinity, per_point, cross_check):
        self.total = total
        self.finite = finite
        self.at_infinity = at_infinity
        self.per_point = per_point
        self.cross_check = cross_check

    @property
    def consistent(self):
        return all(self.cross_check.values())

    def __repr__(self):
        return f"ResidueReport(total={self.total.format()}, cross_check={self.cross_check})"


def _traced_residue_scalar(num, den, q):
    """Tr_{k(c)/K} Res_c(num/den dt) at the finite point c = (q), over K.

    With den = q^e D1 and q coprime to D1, the q-part of the partial fraction
    decomposition is P/q^e with P = num * D1^-1 mod q^e, and the residues of
    P/q^e summed over the roots of q (that is, the trace) equal the
    coefficient of t^(deg q^e - 1) in P over lc(q^e).
    """
    K = den.field
    if not num:
        return K.zero
    e, d1 = den.multiplicity(q)
    if e == 0:
        return K.zero
    qe = q ** e
    s, _, g = (d1 % qe).gcdex(qe)
    if g.degree != 0:
        raise AlgebraError("point polynomial is not coprime to the rest of the denominator")
    P = (num % qe) * s % qe
    return P.coeff(qe.degree - 1) * K.inv(qe.lc)


def traced_residue(w, point):
    """Tr_{k(c)/K} Res_c(w) as a form over K (partial fractions, no extension arithmetic)."""
    K = w.field.base
    if point.is_infinity:
        return residue_at(w, point)
    terms = {}
    for basis, h in _split_dt(w):
        terms[basis] = _traced_residue_scalar(h.num, h.den, point.poly)
    return DifferentialForm(K, w.degree - 1, terms)


def residue_sum(w, hints=()):
    """Sum over all closed points of Tr Res_c(w), with cross-checks.

    ``w`` is a form over K(t), or a list of (integer weight, form) pieces
    standing for their weighted sum (residues are additive, so large forms can
    be handled through a known decomposition).  A piece may carry a third
    entry, the finite points that can be poles of it; otherwise its
    denominators are factored with ``hints``.

    Finite residues come from exact partial fractions at each point of the
    supported factorization of the denominators.  Three independent checks:
    the direct s = 1/t residue at infinity against minus the finite total, the
    pointwise total against the factorization-free division route, and the
    Laurent expansion at each rational point against its partial fraction value.
    """
    pieces = [(1, w)] if isinstance(w, DifferentialForm) else list(w)
    if not pieces:
        raise AlgebraError("residue_sum of an empty decomposition")
    F = pieces[0][1].field
    K = F.base
    deg = pieces[0][1].degree
    # a piece contributes only at its own poles
    at_point = {}
    laurent_ok = True
    for piece in pieces:
        m, x = piece[0], piece[1]
        candidates = piece[2] if len(piece) > 2 else pole_points(x, hints)
        dens = [h.den for _, h in _split_dt(x)]
        for p in candidates:
            if not any(h.degree >= p.degree and p.poly.divides(h) for h in dens):
                continue
            r = traced_residue(x, p)
            if p.degree == 1:
                laurent_ok = laurent_ok and residue_at(x, p).change_field(K) == r
            prev = at_point.get(p)
            at_point[p] = r * m if prev is None else prev + r * m
    per_point = []
    finite = DifferentialForm.zero(K, deg - 1)
    for p in sorted(at_point, key=lambda q: q.sort_key()):
        per_point.append((p, at_point[p]))
        finite = finite + at_point[p]
    inf = DifferentialForm.zero(K, deg - 1)
    division = DifferentialForm.zero(K, deg - 1)
    for piece in pieces:
        m, x = piece[0], piece[1]
        inf = inf + residue_at(x, INFINITY) * m
        division = division + _finite_sum_by_partial_fractions(x) * m
    total = finite + inf
    cross = {
        "infinity_vs_finite": inf == -finite,
        "pointwise_vs_partial_fractions": division == finite,
        "laurent_vs_partial_fractions": laurent_ok,
    }
    return ResidueReport(total, finite, inf, per_point, cross)


def _finite_sum_by_partial_fractions(w):
    """Total finite residue without factoring: the polynomial-division route.

    For h = N/D with deg N < deg D the total finite residue is lc(N_{deg D - 1})/lc(D);
    the polynomial part of h has no finite poles.
    """
    F = w.field
    K = F.base
    terms = {}
    for basis, h in _split_dt(w):
        _, r = h.num.divmod(h.den)
        terms[basis] = r.coeff(h.den.degree - 1) * K.inv(h.den.lc) if h.den.degree > 0 else K.zero
    return DifferentialForm(K, w.degree - 1, terms)


def evaluate_form_at(w, point):
    """Restriction of a form over K(t) without dt to the point c (coefficients evaluated in k(c))."""
    from .line import evaluate_at

    F = w.field
    if point.is_infinity:
        target = F.base
    else:
        target = residue_field(point)[0]
    terms = {}
    for basis, h in w.terms.items():
        if basis and basis[-1] == F.var:
            raise AlgebraError("cannot restrict a form containing dt to a point")
        terms[basis] = evaluate_at(h, point)
    return DifferentialForm(target, w.degree, terms)
