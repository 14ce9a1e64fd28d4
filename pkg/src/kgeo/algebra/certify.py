"""Irreducibility certificates for polynomials over the base field.

Only cheap, checkable certificates are accepted: linear polynomials,
quadratics with non-square discriminant, Eisenstein's criterion at one of the
transcendental variables, or an explicit ``assume`` flag that is recorded in
every report that depends on it.
"""

from dataclasses import dataclass

from ..errors import ReducibleError
from .fields import BaseField


@dataclass(frozen=True)
class Certificate:
    kind: str  # "linear" | "discriminant" | "eisenstein" | "assumed"
    detail: str = ""

    @property
    def assumed(self):
        return self.kind == "assumed"

    def describe(self):
        return self.kind if not self.detail else f"{self.kind}:{self.detail}"


def quadratic_roots(q):
    """Roots of a quadratic over its coefficient field, or None if it is irreducible."""
    F = q.field
    c, b, a = q.coeffs
    disc = b * b - a * c * 4
    root = F.sqrt(disc) if hasattr(F, "sqrt") else None
    if root is None:
        return None
    inv = F.inv(a * 2)
    return ((-b + root) * inv, (-b - root) * inv)


def eisenstein_variable(q):
    """A variable x of the base field at which the monic q is Eisenstein, else None."""
    F = q.field
    if not isinstance(F, BaseField) or q.degree < 2:
        return None
    for var in F.variables:
        if F.var_valuation(q.lc, var) != 0:
            continue
        ok = True
        for c in q.coeffs[1:-1]:
            if not F.is_zero(c) and F.var_valuation(c, var) < 1:
                ok = False
                break
        if ok and not F.is_zero(q.coeffs[0]) and F.var_valuation(q.coeffs[0], var) == 1:
            return var
    return None


def certify_irreducible(q, certificate="auto"):
    """Return a Certificate that the monic polynomial q is irreducible.

    ``certificate`` is "auto" (try linear/discriminant/Eisenstein), "assume",
    or an explicit "eisenstein:<var>".  Raises ReducibleError when reducibility
    is detected or no certificate applies.
    """
    if q.degree < 1:
        raise ReducibleError("constant polynomial does not define a point")
    if q.degree == 1:
        return Certificate("linear")
    if certificate == "assume":
        return Certificate("assumed", q.format("u"))
    if q.degree == 2:
        if quadratic_roots(q) is not None:
            raise ReducibleError(f"quadratic {q.format('u')} has a root in the base field")
        return Certificate("discriminant")
    if isinstance(certificate, str) and certificate.startswith("eisenstein:"):
        var = certificate.split(":", 1)[1]
        F = q.field
        if var not in getattr(F, "variables", ()):
            raise ReducibleError(f"unknown Eisenstein variable {var!r}")
        found = eisenstein_variable(q)
        if found != var and not _eisenstein_at(q, var):
            raise ReducibleError(f"{q.format('u')} is not Eisenstein at {var}")
        return Certificate("eisenstein", var)
    var = eisenstein_variable(q)
    if var is not None:
        return Certificate("eisenstein", var)
    raise ReducibleError(f"no irreducibility certificate for {q.format('u')} (degree {q.degree})")


def _eisenstein_at(q, var):
    F = q.field
    if F.var_valuation(q.lc, var) != 0:
        return False
    if any(not F.is_zero(c) and F.var_valuation(c, var) < 1 for c in q.coeffs[1:-1]):
        return False
    return not F.is_zero(q.coeffs[0]) and F.var_valuation(q.coeffs[0], var) == 1
