"""Simple finite extensions L = K[u]/(p(u)) with trace and norm."""

from fractions import Fraction
from functools import cached_property

from ..errors import AlgebraError
from .certify import certify_irreducible
from .fields import join_terms
from .upoly import UPoly


class Extension:
    """A simple extension of a base field by a root u of a monic irreducible p.

    The base may be a ConstantField or a BaseField.  Elements are ExtElement
    instances holding coordinates in the power basis 1, u, ..., u^(d-1).
    """

    def __init__(self, base, min_poly, certificate="auto"):
        if not isinstance(min_poly, UPoly):
            min_poly = UPoly(base, min_poly)
        if min_poly.field != base:
            raise AlgebraError("minimal polynomial must have coefficients in the base field")
        if min_poly.degree < 2:
            raise AlgebraError("an extension needs a minimal polynomial of degree >= 2")
        if not min_poly.is_monic():
            raise AlgebraError("minimal polynomial must be monic")
        self.base = base
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.certificate = certify_irreducible(min_poly, certificate)
        self.zero = ExtElement(self, ())
        self.one = ExtElement(self, (base.one,))
        self.u = ExtElement(self, (base.zero, base.one))

    # protocol -----------------------------------------------------------
    @property
    def variables(self):
        return self.base.variables

    @property
    def constants(self):
        return self.base.constants

    def convert(self, x):
        if isinstance(x, ExtElement):
            if x.field is self or x.field == self:
                return x
            raise AlgebraError("element of a different extension")
        if isinstance(x, (int, Fraction)):
            return ExtElement(self, (self.base.convert(x),))
        return ExtElement(self, (self.base.convert(x),))

    def gen(self, name):
        if name == "u":
            return self.u
        return self.convert(self.base.gen(name))

    def is_zero(self, x):
        return not x.coeffs

    def eq(self, x, y):
        return self.is_zero(self.convert(x) - self.convert(y))

    def inv(self, x):
        return self.convert(x).inverse()

    def key(self, x):
        return tuple(self.base.key(c) for c in x.coeffs)

    def format(self, x):
        pieces = []
        for i in range(len(x.coeffs) - 1, -1, -1):
            c = x.coeffs[i]
            if self.base.is_zero(c):
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            pieces.append((self.base.format_coeff(c), mono))
        return join_terms(pieces)

    def format_coeff(self, x):
        s = self.format(x)
        return s if len(x.coeffs) <= 1 and not s.startswith("-") and "+" not in s and " - " not in s else f"({s})"

    def sqrt(self, x):
        return None  # no automatic root finding inside extensions

    @cached_property
    def _du(self):
        """Partial derivatives of u with respect to each base variable."""
        p = self.min_poly
        dp = p.derivative()(self.u)
        inv = dp.inverse()
        out = {}
        for var in self.variables:
            px = p.map_coeffs(lambda c: self.base.diff(c, var))
            out[var] = -(px(self.u, field=self) * inv)
        return out

    def diff(self, x, var):
        x = self.convert(x)
        if var not in self.variables:
            return self.zero
        B = self.base
        part = ExtElement(self, tuple(B.diff(c, var) for c in x.coeffs))
        deriv_u = ExtElement(self, tuple(c * i for i, c in enumerate(x.coeffs))[1:])
        return part + deriv_u * self._du[var]

    # structure ------------------------------------------------------------
    def reduce_poly(self, coeffs):
        """Reduce a coefficient list (low first) modulo the minimal polynomial."""
        B = self.base
        d = self.degree
        p = self.min_poly.coeffs
        rem = list(coeffs)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if B.is_zero(c):
                continue
            for j in range(d):
                rem[k - d + j] = rem[k - d + j] - c * p[j]
            rem[k] = B.zero
        return rem[:d]

    @cached_property
    def _power_traces(self):
        # Tr(u^j) for j < d from the diagonal of multiplication by u^j.
        B = self.base
        d = self.degree
        traces = []
        for j in range(d):
            tr = B.zero
            for i in range(d):
                row = [B.zero] * (i + j) + [B.one]
                red = self.reduce_poly(row)
                tr = tr + red[i]
            traces.append(tr)
        return traces

    def trace(self, x):
        """Tr_{L/K}(x): trace of multiplication by x on the power basis."""
        if not isinstance(x, ExtElement):
            return self.base.convert(x) * self.degree
        x = self.convert(x)
        B = self.base
        tr = B.zero
        for c, t in zip(x.coeffs, self._power_traces):
            tr = tr + c * t
        return tr

    def multiplication_matrix(self, x):
        x = self.convert(x)
        cols = []
        basis = ExtElement(self, (self.base.one,))
        for _ in range(self.degree):
            prod = x * basis
            cols.append([prod.coeff(i) for i in range(self.degree)])
            basis = basis * self.u
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def norm(self, x):
        """N_{L/K}(x) as the determinant of multiplication by x."""
        if not isinstance(x, ExtElement):
            return self.base.convert(x) ** self.degree
        B = self.base
        m = self.multiplication_matrix(x)
        n = self.degree
        det = B.one
        for col in range(n):
            pivot = next((r for r in range(col, n) if not B.is_zero(m[r][col])), None)
            if pivot is None:
                return B.zero
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det = det * m[col][col]
            inv = B.inv(m[col][col])
            for r in range(col + 1, n):
                if B.is_zero(m[r][col]):
                    continue
                fac = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] = m[r][c] - fac * m[col][c]
        return det

    def __eq__(self, other):
        return (
            isinstance(other, Extension)
            and other.base == self.base
            and other.min_poly == self.min_poly
        )

    def __hash__(self):
        return hash(("Extension", self.base, self.min_poly.key()))

    def __repr__(self):
        return f"{self.base!r}[u]/({self.min_poly.format('u')})"

    @property
    def name(self):
        return repr(self)


class ExtElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        B = field.base
        coeffs = [B.convert(c) for c in coeffs]
        if len(coeffs) > field.degree:
            coeffs = field.reduce_poly(coeffs)
        while coeffs and B.is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.base.zero

    def _other(self, other):
        return self.field.convert(other)

    def __add__(self, other):
        other = self._other(other)
        B = self.field.base
        n = max(len(self.coeffs), len(other.coeffs))
        return ExtElement(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        B = self.field.base
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self.field.zero
        out = [B.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return ExtElement(self.field, out)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise AlgebraError("division by zero in extension")
        L = self.field
        mp = L.min_poly
        if mp.degree == 2 and mp.is_monic():
            # x^-1 = conj(x) / N(x) with conj(u) = -p1 - u
            B = L.base
            p0, p1 = mp.coeffs[0], mp.coeffs[1]
            x0, x1 = self.coeff(0), self.coeff(1)
            if B.is_zero(x1):
                return ExtElement(L, [B.inv(x0)])
            c0 = x0 - p1 * x1
            n = x0 * c0 + p0 * x1 * x1
            if B.is_zero(n):
                raise AlgebraError("element is not invertible (minimal polynomial reducible)")
            ni = B.inv(n)
            return ExtElement(L, [c0 * ni, -(x1 * ni)])
        a = UPoly(L.base, self.coeffs)
        s, _, g = a.gcdex(L.min_poly)
        if g.degree != 0:
            raise AlgebraError("element is not invertible (minimal polynomial reducible)")
        return ExtElement(L, s.coeffs)

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        try:
            return self.field.eq(self, other)
        except AlgebraError:
            return False

    def __hash__(self):
        return hash((self.field, self.field.key(self)))

    def __repr__(self):
        return self.field.format(self)


def extend(base, min_poly, certificate="auto"):
    """Adjoin a root of ``min_poly``; a linear polynomial collapses to the base field.

    Returns ``(field, root)``.
    """
    if not isinstance(min_poly, UPoly):
        min_poly = UPoly(base, min_poly)
    min_poly = min_poly.monic()
    if min_poly.degree == 1:
        return base, -min_poly.coeffs[0]
    L = Extension(base, min_poly, certificate)
    return L, L.u
