"""The projective line over a base field K: rational functions, closed points,
valuations, divisors and the congruence groups G(P^1, m).

Points are monic irreducible polynomials q(t) (or infinity); the point at
infinity is handled through the local parameter s = 1/t.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from .algebra.certify import Certificate, certify_irreducible, eisenstein_variable, quadratic_roots
from .algebra.extension import Extension, ExtElement
from .algebra.fields import BaseField, ConstantField
from .algebra.upoly import UPoly
from .errors import AlgebraError, FactorizationIncomplete, PoleError, ReducibleError


class FunctionField:
    """K(t), the function field of P^1 over K."""

    def __init__(self, base, var="t"):
        self.base = base
        self.var = var
        self.zero = RationalFunction(self, UPoly(base, []), UPoly.constant(base, 1), normalized=True)
        self.one = RationalFunction(self, UPoly.constant(base, 1), UPoly.constant(base, 1), normalized=True)
        self.t = RationalFunction(self, UPoly.x(base), UPoly.constant(base, 1), normalized=True)

    @property
    def variables(self):
        return tuple(self.base.variables) + (self.var,)

    @property
    def constants(self):
        return self.base.constants

    def convert(self, x):
        if isinstance(x, RationalFunction):
            if x.field == self:
                return x
            raise AlgebraError("rational function over a different field")
        if isinstance(x, UPoly):
            return RationalFunction(self, x, UPoly.constant(self.base, 1))
        c = self.base.convert(x)
        return RationalFunction(self, UPoly(self.base, [c]), UPoly.constant(self.base, 1), normalized=True)

    def from_polys(self, num, den=None):
        if den is None:
            den = UPoly.constant(self.base, 1)
        return RationalFunction(self, num, den)

    def gen(self, name):
        if name == self.var:
            return self.t
        return self.convert(self.base.gen(name))

    def is_zero(self, x):
        return not x.num

    def eq(self, x, y):
        return self.is_zero(self.convert(x) - self.convert(y))

    def inv(self, x):
        return self.one / x

    def diff(self, x, var):
        x = self.convert(x)
        if var == self.var:
            num = x.num.derivative() * x.den - x.num * x.den.derivative()
            return RationalFunction(self, num, x.den * x.den)
        if var not in self.base.variables:
            return self.zero
        dn = x.num.map_coeffs(lambda c: self.base.diff(c, var))
        dd = x.den.map_coeffs(lambda c: self.base.diff(c, var))
        return RationalFunction(self, dn * x.den - x.num * dd, x.den * x.den)

    def log_diff(self, x, var):
        """(d x / d var) / x with a single normalization."""
        x = self.convert(x)
        if var == self.var:
            dn, dd = x.num.derivative(), x.den.derivative()
        elif var in self.base.variables:
            dn = x.num.map_coeffs(lambda c: self.base.diff(c, var))
            dd = x.den.map_coeffs(lambda c: self.base.diff(c, var))
        else:
            return self.zero
        top = dn * x.den - x.num * dd
        if not top:
            return self.zero
        return RationalFunction(self, top, x.num * x.den)

    def key(self, x):
        return (x.num.key(), x.den.key())

    def format(self, x):
        ns = x.num.format(self.var)
        if x.den.degree == 0:
            return ns
        return f"({ns})/({x.den.format(self.var)})"

    def format_coeff(self, x):
        return f"({self.format(x)})"

    def sqrt(self, x):
        return None

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.base == self.base and other.var == self.var

    def __hash__(self):
        return hash(("FunctionField", self.base, self.var))

    def __repr__(self):
        return f"{self.base!r}({self.var})"


class RationalFunction:
    """num/den with coprime num, den and den monic."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, normalized=False):
        if not den:
            raise AlgebraError("zero denominator")
        if not normalized:
            if not num:
                den = UPoly.constant(field.base, 1)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.lc
                if not field.base.eq(lc, field.base.one):
                    inv = field.base.inv(lc)
                    num = num * inv
                    den = den * inv
        self.field = field
        self.num = num
        self.den = den

    def _other(self, other):
        return self.field.convert(other)

    def __add__(self, other):
        o = self._other(other)
        if self.den == o.den:
            return RationalFunction(self.field, self.num + o.num, self.den)
        return RationalFunction(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return RationalFunction(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if not o.num:
            raise AlgebraError("division by zero rational function")
        return RationalFunction(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.field.one / (self ** (-n))
        return RationalFunction(self.field, self.num ** n, self.den ** n, normalized=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        try:
            return self.field.eq(self, other)
        except AlgebraError:
            return False

    def __hash__(self):
        return hash(self.field.key(self))

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise AlgebraError("rational function is not constant")
        return self.num.coeff(0)

    def derivative(self):
        return self.field.diff(self, self.field.var)

    def __repr__(self):
        return self.field.format(self)


# ---------------------------------------------------------------------------
# closed points


@dataclass(frozen=True, eq=False)
class ClosedPoint:
    """A closed point of P^1: a monic irreducible q(t), or infinity (poly None)."""

    poly: UPoly | None
    certificate: Certificate = dc_field(default=Certificate("linear"))

    @property
    def is_infinity(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        if self.poly is None:
            return (1, 1, ())
        return (0, self.poly.degree, self.poly.key())

    def __eq__(self, other):
        if not isinstance(other, ClosedPoint):
            return NotImplemented
        if self.poly is None or other.poly is None:
            return self.poly is None and other.poly is None
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def label(self, var="t"):
        if self.poly is None:
            return "inf"
        return self.poly.format(var)

    def root_label(self):
        """Expression of the coordinate: the value for rational points, else the polynomial."""
        if self.poly is None:
            return "inf"
        if self.poly.degree == 1:
            return self.poly.field.format(-self.poly.coeffs[0])
        return self.poly.format("t")

    def __repr__(self):
        return f"[{self.label()}]"


def infinity():
    return ClosedPoint(None)


INFINITY = ClosedPoint(None)


def point_at(base, value):
    """The degree-one point t = value."""
    value = base.convert(value)
    return ClosedPoint(UPoly(base, [-value, base.one]))


def make_point(q, certificate="auto"):
    """Closed point from a polynomial q(t); q is made monic and certified irreducible."""
    q = q.monic()
    cert = certify_irreducible(q, certificate)
    return ClosedPoint(q, cert)


@lru_cache(maxsize=4096)
def _extension(point):
    cert = point.certificate
    if cert.assumed:
        policy = "assume"
    elif cert.kind == "eisenstein":
        policy = f"eisenstein:{cert.detail}"
    else:
        policy = "auto"
    return Extension(point.poly.field, point.poly, policy)


def residue_field(point):
    """(k(c), root): the residue field and the image of t (None at infinity)."""
    if point.is_infinity:
        raise AlgebraError("use evaluate_at for the point at infinity")
    q = point.poly
    if q.degree == 1:
        return q.field, -q.coeffs[0]
    L = _extension(point)
    return L, L.u


def residue_field_of(point, base):
    if point.is_infinity:
        return base
    return residue_field(point)[0]


# ---------------------------------------------------------------------------
# valuations and evaluation


def valuation(f, point):
    """Order of vanishing of the nonzero rational function f at the point."""
    if not f.num:
        raise AlgebraError("valuation of the zero function")
    if point.is_infinity:
        return f.den.degree - f.num.degree
    q = point.poly
    en, _ = f.num.multiplicity(q)
    ed, _ = f.den.multiplicity(q)
    return en - ed


def valuation_plus(f, point):
    """Valuation allowing f = 0 (returns None for +infinity)."""
    if not f.num:
        return None
    return valuation(f, point)


def evaluate_at(f, point):
    """f(c) in the residue field k(c); raises PoleError at poles."""
    if point.is_infinity:
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            raise PoleError(f"{f!r} has a pole at infinity")
        if dn < dd:
            return f.field.base.zero
        return f.num.lc / f.den.lc
    L, root = residue_field(point)
    den = f.den(root, field=L)
    if L.is_zero(den):
        raise PoleError(f"{f!r} has a pole at {point!r}")
    return f.num(root, field=L) / den


# ---------------------------------------------------------------------------
# divisors


class Divisor:
    """Finite Z-combination of closed points."""

    __slots__ = ("_mults",)

    def __init__(self, mults=None):
        clean = {}
        for p, m in (mults or {}).items():
            m = int(m)
            if m:
                clean[p] = clean.get(p, 0) + m
        self._mults = {p: m for p, m in clean.items() if m}

    @classmethod
    def point(cls, p, mult=1):
        return cls({p: mult})

    def items(self):
        return sorted(self._mults.items(), key=lambda kv: kv[0].sort_key())

    def support(self):
        return [p for p, _ in self.items()]

    def mult(self, p):
        return self._mults.get(p, 0)

    @property
    def degree(self):
        return sum(m * p.degree for p, m in self._mults.items())

    def is_effective(self):
        return all(m > 0 for m in self._mults.values())

    def is_zero(self):
        return not self._mults

    def __add__(self, other):
        out = dict(self._mults)
        for p, m in other._mults.items():
            out[p] = out.get(p, 0) + m
        return Divisor(out)

    def __neg__(self):
        return Divisor({p: -m for p, m in self._mults.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        return Divisor({p: n * m for p, m in self._mults.items()})

    __rmul__ = __mul__

    def __le__(self, other):
        return divisor_leq(self, other)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._mults == other._mults

    def __hash__(self):
        return hash(tuple((p.sort_key(), m) for p, m in self.items()))

    def pointwise_max(self, other):
        pts = set(self._mults) | set(other._mults)
        return Divisor({p: max(self.mult(p), other.mult(p)) for p in pts})

    def reduced(self):
        return Divisor({p: 1 for p in self._mults})

    def positive_part(self):
        return Divisor({p: m for p, m in self._mults.items() if m > 0})

    def negative_part(self):
        return Divisor({p: -m for p, m in self._mults.items() if m < 0})

    def __repr__(self):
        if not self._mults:
            return "0"
        parts = []
        for p, m in self.items():
            term = repr(p) if abs(m) == 1 else f"{abs(m)}{p!r}"
            parts.append(("-" if m < 0 else "+", term))
        s = "".join(f" {sg} {t}" for sg, t in parts).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:] if s.startswith("- ") else s


def divisor_leq(d1, d2):
    """True iff mult_{d1}(c) <= mult_{d2}(c) at every point c."""
    pts = set(d1._mults) | set(d2._mults)
    return all(d1.mult(p) <= d2.mult(p) for p in pts)


def divisor_max(divisors):
    out = Divisor()
    for d in divisors:
        out = out.pointwise_max(d)
    return out


def divisor_sum(divisors):
    out = Divisor()
    for d in divisors:
        out = out + d
    return out


# ---------------------------------------------------------------------------
# supported factorization


@dataclass(frozen=True)
class Hint:
    poly: UPoly
    certificate: str = "auto"


def _as_hint(h):
    if isinstance(h, Hint):
        return h
    return Hint(h)


def _irreducible_pieces(h):
    """Split a hint into certified irreducible monic pieces."""
    q = h.poly.monic()
    if q.degree < 1:
        return []
    if q.degree == 1:
        return [ClosedPoint(q)]
    if q.degree == 2 and h.certificate != "assume":
        roots = quadratic_roots(q)
        if roots is not None:
            return [point_at(q.field, r) for r in roots]
        return [ClosedPoint(q, Certificate("discriminant"))]
    if h.certificate == "auto":
        try:
            return [make_point(q, "auto")]
        except ReducibleError:
            return [p for p, _ in _split_residual(q)]
    return [make_point(q, h.certificate)]


def _root_candidates(F):
    """Cheap candidate roots: 0 and the roots of unity of the constant field."""
    C = F.constants
    out = [F.zero, F.one, -F.one]
    if C.is_algebraic:
        z = F.convert(C.zeta)
        w = F.one
        for _ in range(C.order):
            w = w * z
            if not any(F.eq(w, c) for c in out):
                out.append(w)
    return out


def _split_residual(r):
    """Certified factorization of a monic residual without hints."""
    if r.degree < 1:
        return []
    if r.degree == 1:
        return [(ClosedPoint(r), 1)]
    if r.degree == 2:
        roots = quadratic_roots(r)
        if roots is None:
            return [(ClosedPoint(r, Certificate("discriminant")), 1)]
        p1, p2 = point_at(r.field, roots[0]), point_at(r.field, roots[1])
        return [(p1, 2)] if p1 == p2 else [(p1, 1), (p2, 1)]
    var = eisenstein_variable(r)
    if var is not None:
        return [(ClosedPoint(r, Certificate("eisenstein", var)), 1)]
    # square-free splitting is gcd-based, never a general factorization
    g = r.gcd(r.derivative())
    if g.degree > 0:
        out = {}
        for part in (g, r.exact_div(g)):
            for p, m in _split_residual(part.monic()):
                out[p] = out.get(p, 0) + m
        return list(out.items())
    # roots of unity of the constant field are cheap to test
    F = r.field
    for cand in _root_candidates(F):
        if F.is_zero(r(cand)):
            lin = UPoly(F, [-cand, F.one])
            rest = r.exact_div(lin)
            out = {ClosedPoint(lin): 1}
            for p, m in _split_residual(rest):
                out[p] = out.get(p, 0) + m
            return list(out.items())
    raise FactorizationIncomplete(
        f"cannot certify a factorization of {r.format('t')} (degree {r.degree}); supply factor hints",
        residual=r,
    )


@dataclass
class Factorization:
    unit: object
    factors: list  # [(ClosedPoint, multiplicity)]

    def expand(self, field):
        out = UPoly.constant(field, self.unit)
        for p, m in self.factors:
            out = out * (p.poly ** m)
        return out


_FACTOR_CACHE = {}
_FACTOR_CACHE_SIZE = 256


def factor_supported(q, hints=()):
    """Factor q(t) into certified irreducible factors using hints.

    Hints are candidate factors (UPoly or Hint); quadratic pieces are split by
    a discriminant square root when possible.  The product of the result is
    checked against q coefficient by coefficient.  Results are memoized.
    """
    if not q:
        raise AlgebraError("cannot factor the zero polynomial")
    hints = tuple(_as_hint(h) for h in hints)
    key = (id(q.field), q.key(), tuple((id(h.poly.field), h.poly.key(), h.certificate) for h in hints))
    hit = _FACTOR_CACHE.get(key)
    if hit is not None and hit[0] is q.field:
        return hit[1]
    fac = _factor_supported(q, hints)
    if len(_FACTOR_CACHE) >= _FACTOR_CACHE_SIZE:
        _FACTOR_CACHE.clear()
    _FACTOR_CACHE[key] = (q.field, fac)
    return fac


def _factor_supported(q, hints):
    F = q.field
    unit = q.lc
    r = q.monic()
    found = {}
    if any(h.poly.field != F for h in hints):
        raise AlgebraError("factor hint over a different field")
    for h in hints:
        if r.degree <= 0:
            break
        for piece in _irreducible_pieces(h):
            if piece.poly.degree > r.degree:
                continue
            e, r2 = r.multiplicity(piece.poly)
            if e:
                found[piece] = found.get(piece, 0) + e
                r = r2
    for p, m in _split_residual(r.monic()):
        found[p] = found.get(p, 0) + m
    fac = Factorization(unit, tuple(sorted(found.items(), key=lambda kv: kv[0].sort_key())))
    if fac.expand(F) != q:
        raise AlgebraError("supported factorization does not reconstruct the input")
    return fac


def principal_divisor(f, hints=()):
    """div(f) as a Divisor (degree zero)."""
    if not f.num:
        raise AlgebraError("divisor of the zero function")
    mults = {}
    for p, m in factor_supported(f.num, hints).factors:
        mults[p] = mults.get(p, 0) + m
    for p, m in factor_supported(f.den, hints).factors:
        mults[p] = mults.get(p, 0) - m
    inf = f.den.degree - f.num.degree
    if inf:
        mults[INFINITY] = inf
    return Divisor(mults)


def poles(f, hints=()):
    """Pole divisor of f (effective)."""
    return (-principal_divisor(f, hints)).positive_part()


def in_G(f, modulus):
    """True iff f is congruent to 1 modulo the effective divisor."""
    if not modulus.is_effective() and not modulus.is_zero():
        raise AlgebraError("modulus must be effective")
    diff = f - f.field.one
    if not diff.num:
        return True
    for p, m in modulus.items():
        if valuation(diff, p) < m:
            return False
    return True


def congruence_defects(f, modulus):
    """[(point, required, actual)] for every point where f is not 1 mod the modulus."""
    diff = f - f.field.one
    out = []
    if not diff.num:
        return out
    for p, m in modulus.items():
        v = valuation(diff, p)
        if v < m:
            out.append((p, m, v))
    return out


# ---------------------------------------------------------------------------
# the line of the first variable of a one-variable base field


def as_line_function(x, base):
    """View an element of Q(zeta)(a) as a rational function on the a-line over Q(zeta)."""
    if not isinstance(base, BaseField) or len(base.variables) != 1:
        raise AlgebraError("the a-line requires a base field with exactly one variable")
    C = base.constants
    line = _line_field(C, base.variables[0])

    def to_upoly(p):
        deg = p.degree() if p else -1
        cs = [C.zero] * (deg + 1)
        for (e,), c in p.terms():
            cs[e] = C.convert_ground(c)
        return UPoly(C, cs)

    return RationalFunction(line, to_upoly(x.numer), to_upoly(x.denom))


@lru_cache(maxsize=64)
def _line_field(constants, var):
    return FunctionField(constants, var)
