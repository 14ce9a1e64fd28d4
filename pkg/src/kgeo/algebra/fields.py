"""Constant fields Q(zeta_m) and rational function fields Q(zeta_m)(x1, ..., xn).

Elements are plain sympy domain objects: ``mpq`` / ``ANP`` for constants and
``FracElement`` for the rational function field.  Every field object exposes the
same small protocol (``zero``, ``one``, ``convert``, ``is_zero``, ``eq``,
``inv``, ``diff``, ``key``, ``format``, ``sqrt``) so that the univariate
polynomial, extension and projective-line code can be written once.

Equality is always decided by ``eq`` (difference reduces to zero), never by
sympy's ``==``, because sympy compares raw representations.
"""

from fractions import Fraction
from functools import cached_property
from math import isqrt

from sympy import I, Symbol, cyclotomic_poly, exp, pi
from sympy.polys.domains import QQ
from sympy.polys.factortools import dup_factor_list
from sympy.polys.fields import FracElement, field as sympy_field

from ..errors import AlgebraError

_RESERVED = {"t", "u", "s", "zeta"}


def _to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _fmt_rational(q):
    q = _to_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_monomial(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def join_terms(pieces):
    """Join ``(coeff_str, monomial_str)`` pairs into a signed sum.

    ``coeff_str`` is either a bare signed rational or a parenthesised
    expression; ``monomial_str`` may be empty.
    """
    out = []
    for coeff, mono in pieces:
        if coeff.startswith("("):
            body = f"{coeff}*{mono}" if mono else coeff
            sign = "+"
        else:
            sign = "-" if coeff.startswith("-") else "+"
            mag = coeff.lstrip("-")
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


def grlex_key(exps):
    return (sum(exps), tuple(exps))


class ConstantField:
    """The cyclotomic field Q(zeta_m), presented as Q[z]/Phi_m(z).

    ``order`` 1 and 2 both give Q (zeta is 1, resp. -1).
    """

    variables = ()

    def __init__(self, order=1):
        order = int(order)
        if order < 1:
            raise ValueError("cyclotomic order must be a positive integer")
        self.order = order
        if order <= 2:
            self.domain = QQ
            self.zeta = QQ(1) if order == 1 else QQ(-1)
        else:
            root = exp(2 * pi * I / order)
            self.domain = QQ.algebraic_field(root)
            phi = cyclotomic_poly(order, Symbol("_x"))
            if self.domain.ext.minpoly.as_expr().subs(self.domain.ext.minpoly.gen, Symbol("_x")) != phi:
                raise AlgebraError(f"unexpected minimal polynomial for zeta_{order}")
            self.zeta = self.domain.from_sympy(root)
        self.zero = self.domain.zero
        self.one = self.domain.one

    # protocol -----------------------------------------------------------
    @property
    def constants(self):
        return self

    @property
    def is_algebraic(self):
        return self.domain is not QQ

    @cached_property
    def degree(self):
        """[Q(zeta):Q]."""
        return 1 if not self.is_algebraic else len(self.domain.mod.to_list()) - 1

    def convert(self, x):
        if isinstance(x, Fraction):
            return self.domain.convert(QQ(x.numerator, x.denominator))
        if isinstance(x, FracElement):
            if x.denom.is_ground and x.numer.is_ground:
                return self.convert_ground(x.numer.LC) / self.convert_ground(x.denom.LC)
            raise AlgebraError("element is not constant")
        return self.convert_ground(x)

    def convert_ground(self, x):
        if isinstance(x, int):
            return self.domain(x)
        return self.domain.convert(x)

    def gen(self, name):
        if name == "zeta":
            return self.zeta
        raise KeyError(name)

    def is_zero(self, x):
        return not x

    def eq(self, x, y):
        return not (x - y)

    def inv(self, x):
        if not x:
            raise AlgebraError("division by zero")
        return self.one / x

    def diff(self, x, var):
        return self.zero

    def coeffs(self, x):
        """Rational coefficients of x in the basis 1, zeta, zeta^2, ..."""
        if not self.is_algebraic:
            return [_to_fraction(x)]
        lst = [_to_fraction(c) for c in x.to_list()]
        return lst[::-1]

    def from_coeffs(self, coeffs):
        out = self.zero
        z = self.one
        for c in coeffs:
            out = out + self.convert(Fraction(c)) * z
            z = z * self.zeta
        return out

    def key(self, x):
        return tuple(self.coeffs(x)) if self.is_algebraic else (_to_fraction(x),)

    def is_rational(self, x):
        return all(c == 0 for c in self.coeffs(x)[1:])

    def format(self, x):
        coeffs = self.coeffs(x)
        if not self.is_algebraic:
            return _fmt_rational(coeffs[0])
        pieces = []
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if c:
                mono = "" if k == 0 else ("zeta" if k == 1 else f"zeta^{k}")
                pieces.append((_fmt_rational(c), mono))
        return join_terms(pieces)

    def format_coeff(self, x):
        """Format for use as a multiplicative coefficient (parenthesised if compound)."""
        s = self.format(x)
        if self.is_algebraic and sum(1 for c in self.coeffs(x) if c) > 1:
            return f"({s})"
        return s

    def sqrt(self, x):
        """A square root of x in this field, or None if x is not a square."""
        if not x:
            return self.zero
        if not self.is_algebraic:
            q = _to_fraction(x)
            if q < 0:
                return None
            n, d = isqrt(q.numerator), isqrt(q.denominator)
            if n * n == q.numerator and d * d == q.denominator:
                return self.convert(Fraction(n, d))
            return None
        _, factors = dup_factor_list([self.one, self.zero, -x], self.domain)
        for fac, _mult in factors:
            if len(fac) == 2:
                root = -fac[1] / fac[0]
                return root
        return None

    def __eq__(self, other):
        return isinstance(other, ConstantField) and other.order == self.order

    def __hash__(self):
        return hash(("ConstantField", self.order))

    def __repr__(self):
        return "QQ" if self.order <= 2 else f"QQ(zeta{self.order})"

    @property
    def name(self):
        return repr(self)


class BaseField:
    """Rational function field K = Q(zeta_m)(x1, ..., xn) in canonical reduced form."""

    def __init__(self, constants, variables):
        if isinstance(constants, int):
            constants = ConstantField(constants)
        variables = tuple(variables)
        if not variables:
            raise ValueError("BaseField needs at least one variable; use ConstantField")
        bad = [v for v in variables if v in _RESERVED or not v.isidentifier()]
        if bad or len(set(variables)) != len(variables):
            raise ValueError(f"invalid variable names: {variables}")
        self.constants = constants
        self.variables = variables
        self._field = sympy_field(",".join(variables), constants.domain)[0]
        self._ring = self._field.ring
        self.zero = self._field.zero
        self.one = self._field.one
        self.zeta = self._field(constants.zeta) if constants.is_algebraic else self.convert(constants.zeta)

    def convert(self, x):
        if isinstance(x, FracElement):
            if x.field == self._field:
                return x
            raise AlgebraError("element belongs to a different field")
        if isinstance(x, Fraction):
            return self._field(QQ(x.numerator, x.denominator))
        if isinstance(x, int):
            return self._field(x)
        return self._field(self.constants.convert(x))

    def gen(self, name):
        if name == "zeta":
            return self.zeta
        return self._field.gens[self.variables.index(name)]

    @property
    def gens(self):
        return self._field.gens

    def from_polys(self, numer, denom=None):
        if denom is None:
            return self._field(numer)
        return self._field(numer) / self._field(denom)

    def is_zero(self, x):
        return not x.numer

    def eq(self, x, y):
        return not (x - y).numer

    def inv(self, x):
        if not x.numer:
            raise AlgebraError("division by zero")
        return self.one / x

    def is_constant(self, x):
        return x.numer.is_ground and x.denom.is_ground

    def constant_value(self, x):
        return self.constants.convert(x)

    def diff(self, x, var):
        if var not in self.variables:
            return self.zero
        g = self._ring.gens[self.variables.index(var)]
        n, d = x.numer, x.denom
        num = n.diff(g) * d - n * d.diff(g)
        if not num:
            return self.zero
        return self._field(num) / self._field(d * d)

    # gcd of polynomials in an extra variable through the multivariate ring;
    # Euclid over the fraction field swells coefficients badly.
    @property
    def _ring_t(self):
        r = self.__dict__.get("_ring_t_cache")
        if r is None:
            from sympy.polys.rings import ring as sympy_ring

            r = sympy_ring(",".join(self.variables + ("_t",)), self.constants.domain)[0]
            self.__dict__["_ring_t_cache"] = r
        return r

    def _lift_t(self, coeffs):
        R = self._ring_t
        n = len(self.variables)
        den = self._ring.one
        for c in coeffs:
            den = den.lcm(c.denom)
        out = {}
        for i, c in enumerate(coeffs):
            num = c.numer * (den.exquo(c.denom))
            for mono, v in num.terms():
                out[mono + (i,)] = v
        return R.from_dict(out) if out else R.zero

    def upoly_gcd(self, a, b):
        """Coefficients (low first) of a gcd of two polynomials in t, or None to fall back."""
        if self.constants.is_algebraic and len(self.variables) > 1:
            return None
        P, Q = self._lift_t(a), self._lift_t(b)
        g = P.gcd(Q)
        deg = g.degree(len(self.variables))
        coeffs = [dict() for _ in range(deg + 1)]
        for mono, v in g.terms():
            coeffs[mono[-1]][mono[:-1]] = v
        return [self._field(self._ring.from_dict(c)) if c else self.zero for c in coeffs]

    # polynomials in t with coefficients in K, held as one polynomial in
    # (t, variables) over a common denominator
    @property
    def _ring_t0(self):
        r = self.__dict__.get("_ring_t0_cache")
        if r is None:
            from sympy.polys.rings import ring as sympy_ring

            r = sympy_ring(",".join(("_t",) + self.variables), self.constants.domain)[0]
            self.__dict__["_ring_t0_cache"] = r
        return r

    def _lift0(self, coeffs):
        R = self._ring_t0
        den = self._ring.one
        for c in coeffs:
            if c.denom != den:
                den = den.lcm(c.denom)
        out = {}
        for i, c in enumerate(coeffs):
            num = c.numer if c.denom == den else c.numer * den.exquo(c.denom)
            for mono, v in num.terms():
                out[(i,) + mono] = v
        return (R.from_dict(out) if out else R.zero), den

    def _unlift0(self, P, den):
        if not P:
            return []
        parts = {}
        for mono, v in P.terms():
            parts.setdefault(mono[0], {})[mono[1:]] = v
        out = [self.zero] * (max(parts) + 1)
        for i, c in parts.items():
            out[i] = self._field.new(self._ring.from_dict(c), den)
        return out

    def upoly_mul(self, a, b):
        P, da = self._lift0(a)
        Q, db = self._lift0(b)
        return self._unlift0(P * Q, da * db)

    def upoly_divmod(self, a, b):
        """(quotient, remainder) coefficient lists via pseudo-division."""
        P, da = self._lift0(a)
        Q, db = self._lift0(b)
        k = len(a) - len(b) + 1
        q, r = P.pdiv(Q)
        # lc(Q)^k * P = q Q + r, so a = (q db / (lc^k da)) b + r / (lc^k da)
        lc = self._ring.from_dict({m[1:]: v for m, v in Q.terms() if m[0] == len(b) - 1})
        scale = lc ** k * da
        return self._unlift0(q * self._embed0(db), scale), self._unlift0(r, scale)

    def _embed0(self, c):
        return self._ring_t0.from_dict({(0,) + m: v for m, v in c.terms()})

    def canonical(self, x):
        """(numerator, denominator) with denominator monic in graded-lex order."""
        n, d = x.numer, x.denom
        lead = max(d.terms(), key=lambda kv: grlex_key(kv[0]))[1]
        if lead != self.constants.one:
            n = n.quo_ground(lead)
            d = d.quo_ground(lead)
        return n, d

    def _poly_key(self, p):
        c = self.constants
        return tuple(sorted((m, c.key(v)) for m, v in p.terms()))

    def key(self, x):
        n, d = self.canonical(x)
        return (self._poly_key(n), self._poly_key(d))

    def format_poly(self, p):
        c = self.constants
        terms = sorted(p.terms(), key=lambda kv: grlex_key(kv[0]), reverse=True)
        if len(terms) == 1 and not any(terms[0][0]):
            return c.format(terms[0][1])
        pieces = []
        for mono, coeff in terms:
            cs = c.format_coeff(coeff)
            pieces.append((cs, _fmt_monomial(self.variables, mono)))
        return join_terms(pieces)

    def format(self, x):
        n, d = self.canonical(x)
        ns = self.format_poly(n)
        if d == self._ring.one:
            return ns
        return f"({ns})/({self.format_poly(d)})"

    def format_coeff(self, x):
        s = self.format(x)
        n, d = self.canonical(x)
        simple = d == self._ring.one and len(n.terms()) == 1
        return s if simple else f"({s})"

    # valuations along the hyperplane x_i = 0 (used by Eisenstein certificates)
    def var_valuation(self, x, var):
        if not x.numer:
            raise AlgebraError("valuation of zero")
        i = self.variables.index(var)
        vn = min(m[i] for m in x.numer.monoms())
        vd = min(m[i] for m in x.denom.monoms())
        return vn - vd

    def poly_sqrt(self, p):
        """Square root of a polynomial over the constant domain, or None."""
        if not p:
            return p
        R = self._ring
        c = self.constants
        terms = p.terms()
        lead_m, lead_c = max(terms, key=lambda kv: kv[0])
        if any(e % 2 for e in lead_m):
            return None
        rc = c.sqrt(lead_c)
        if rc is None:
            return None
        degs = [sum(m) for m in p.monoms()]
        lo, hi = min(degs), max(degs)
        if lo % 2 or hi % 2:
            return None
        s_lead = R({tuple(e // 2 for e in lead_m): rc})
        s = s_lead
        two_lead = s_lead * 2
        rest = p - s * s
        lead_mono = tuple(e // 2 for e in lead_m)
        steps = 0
        while rest:
            steps += 1
            m, co = max(rest.terms(), key=lambda kv: kv[0])
            q = tuple(a - b for a, b in zip(m, lead_mono))
            if any(e < 0 for e in q) or not (lo // 2 <= sum(q) <= hi // 2) or steps > 5000:
                return None
            term = R({q: co / two_lead.LC})
            s = s + term
            rest = p - s * s
        return s

    def sqrt(self, x):
        n, d = x.numer, x.denom
        r = self.poly_sqrt(n * d)
        if r is None:
            return None
        return self._field(r) / self._field(d)

    def __eq__(self, other):
        return (
            isinstance(other, BaseField)
            and other.constants == self.constants
            and other.variables == self.variables
        )

    def __hash__(self):
        return hash(("BaseField", self.constants, self.variables))

    def __repr__(self):
        return f"{self.constants!r}({', '.join(self.variables)})"

    @property
    def name(self):
        return repr(self)


def make_field(order=1, variables=()):
    """Q(zeta_order) if no variables are given, else Q(zeta_order)(variables)."""
    constants = ConstantField(order)
    if not variables:
        return constants
    return BaseField(constants, variables)
