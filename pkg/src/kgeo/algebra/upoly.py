"""Dense univariate polynomials over any field object of the package protocol."""

from ..errors import AlgebraError


class UPoly:
    """Polynomial sum(c_i * X^i) with coefficients in ``field``.

    ``coeffs`` is stored low degree first with no trailing zeros; the zero
    polynomial has an empty tuple.  Instances are immutable.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [field.convert(c) for c in coeffs]
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def _raw(cls, field, coeffs):
        obj = cls.__new__(cls)
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, c):
        return cls._raw(field, [field.convert(c)])

    # basic queries -------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        if not self.coeffs:
            raise AlgebraError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_monic(self):
        return bool(self.coeffs) and self.field.eq(self.coeffs[-1], self.field.one)

    def is_constant(self):
        return len(self.coeffs) <= 1

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UPoly):
            if other.field != self.field:
                raise AlgebraError("polynomials over different fields")
            return other
        return UPoly._raw(self.field, [self.field.convert(other)])

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UPoly._raw(F, [
            (a[i] if i < len(a) else F.zero) + (b[i] if i < len(b) else F.zero) for i in range(n)
        ])

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            c = self.field.convert(other)
            return UPoly._raw(self.field, [x * c for x in self.coeffs])
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly._raw(self.field, [])
        fast = getattr(self.field, "upoly_mul", None)
        if fast is not None and len(a) > 1 and len(b) > 1:
            return UPoly._raw(self.field, fast(a, b))
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.field.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UPoly._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise AlgebraError("negative power of a polynomial")
        result = UPoly.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            raise AlgebraError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dq = other.degree
        inv_lc = F.inv(other.lc)
        if len(rem) - 1 < dq:
            return UPoly._raw(F, []), self
        fast = getattr(F, "upoly_divmod", None)
        if fast is not None and dq > 1:  # linear divisors: plain synthetic division
            q, r = fast(self.coeffs, other.coeffs)
            return UPoly._raw(F, q), UPoly._raw(F, r)
        quot = [F.zero] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if F.is_zero(c):
                continue
            c = c * inv_lc
            quot[k - dq] = c
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - c * y
        return UPoly._raw(F, quot), UPoly._raw(F, rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise AlgebraError("polynomial division is not exact")
        return q

    def divides(self, other):
        """True iff self | other."""
        return not (other % self)

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lc)
        return UPoly._raw(self.field, [c * inv for c in self.coeffs[:-1]] + [self.field.one])

    def gcd(self, other):
        a, b = self, self._coerce(other)
        fast = getattr(self.field, "upoly_gcd", None)
        if fast is not None and a and b and a.degree > 0 and b.degree > 0:
            coeffs = fast(a.coeffs, b.coeffs)
            if coeffs is not None:
                return UPoly._raw(self.field, coeffs).monic()
        while b:
            a, b = b, a % b
        return a.monic()

    def gcdex(self, other):
        """(s, t, g) with s*self + t*other = g = monic gcd."""
        F = self.field
        r0, r1 = self, self._coerce(other)
        s0, s1 = UPoly.constant(F, 1), UPoly._raw(F, [])
        t0, t1 = UPoly._raw(F, []), UPoly.constant(F, 1)
        while r1:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return s0, t0, r0
        inv = F.inv(r0.lc)
        return s0 * inv, t0 * inv, r0 * inv

    def derivative(self):
        return UPoly._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return UPoly._raw(field, [fn(c) for c in self.coeffs])

    def change_field(self, field):
        """Coerce every coefficient into ``field`` (a field containing ours)."""
        return UPoly._raw(field, [field.convert(c) for c in self.coeffs])

    def __call__(self, x, field=None):
        """Horner evaluation at x; pass ``field`` when x lives in an extension."""
        F = field or self.field
        if not self.coeffs:
            return F.zero
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = acc * x + F.convert(c)
        return acc

    def compose(self, other):
        """self(other(X))."""
        other = self._coerce(other)
        acc = UPoly._raw(self.field, [])
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reverse(self, n=None):
        """X^n * self(1/X) with n defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return UPoly._raw(self.field, cs[: n + 1][::-1])

    def valuation_at_zero(self):
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return i
        raise AlgebraError("valuation of the zero polynomial")

    def shift_down(self, k):
        """Divide by X^k (assumes the low k coefficients vanish)."""
        return UPoly._raw(self.field, self.coeffs[k:])

    def multiplicity(self, q):
        """Largest e with q^e | self, and self / q^e."""
        if not self.coeffs:
            raise AlgebraError("multiplicity in the zero polynomial")
        e, cur = 0, self
        while True:
            quo, rem = cur.divmod(q)
            if rem:
                return e, cur
            e, cur = e + 1, quo

    # comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, UPoly):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        if other.field != self.field or len(other.coeffs) != len(self.coeffs):
            return False
        return all(self.field.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.field, tuple(self.field.key(c) for c in self.coeffs)))

    def key(self):
        return tuple(self.field.key(c) for c in self.coeffs)

    def format(self, var="t"):
        F = self.field
        pieces = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if F.is_zero(c):
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            pieces.append((F.format_coeff(c), mono))
        from .fields import join_terms

        return join_terms(pieces)

    def __repr__(self):
        return f"UPoly({self.format()})"
