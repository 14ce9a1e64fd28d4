"""Sections of Ga, Gm and constants on P^1 with their SC-moduli.

Minimal moduli follow the classical rules in characteristic zero: a Gm
section needs the reduced support of its divisor, a Ga section needs pole
order + 1 at each pole, and a constant needs nothing.
"""

from dataclasses import dataclass

from .errors import InvalidDatum, PoleError
from .line import INFINITY, Divisor, divisor_leq, evaluate_at, factor_supported, principal_divisor, residue_field

KINDS = ("Ga", "Gm", "Const")


@dataclass(frozen=True, eq=False)
class Section:
    kind: str
    expr: object  # RationalFunction
    modulus: Divisor
    group: str = "Gm"  # for constants: the group whose slot they fill

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidDatum(f"unknown section kind {self.kind!r}")
        if self.kind == "Gm" and not self.expr:
            raise InvalidDatum("a Gm section must be nonzero")
        if self.kind == "Const":
            if not self.expr.is_constant():
                raise InvalidDatum(f"constant section {self.expr!r} depends on t")
            if self.group not in ("Ga", "Gm"):
                raise InvalidDatum(f"constant sections fill a Ga or Gm slot, not {self.group!r}")
            if self.group == "Gm" and not self.expr:
                raise InvalidDatum("a constant Gm section must be nonzero")
        if not (self.modulus.is_effective() or self.modulus.is_zero()):
            raise InvalidDatum("declared modulus must be effective")

    @property
    def slot(self):
        """Group of the symbol slot this section fills."""
        return self.group if self.kind == "Const" else self.kind

    def __repr__(self):
        return f"Section({self.kind}, {self.expr!r}, {self.modulus!r})"


def minimal_modulus(kind, expr, hints=()):
    if kind == "Const":
        return Divisor()
    if kind == "Gm":
        if not expr:
            raise InvalidDatum("a Gm section must be nonzero")
        return principal_divisor(expr, hints).reduced()
    if kind == "Ga":
        poles = {}
        for p, m in factor_supported(expr.den, hints).factors:
            poles[p] = m + 1
        inf = expr.num.degree - expr.den.degree
        if expr and inf > 0:
            poles[INFINITY] = inf + 1
        return Divisor(poles)
    raise InvalidDatum(f"unknown section kind {kind!r}")


def section_minimal_modulus(s, hints=()):
    return minimal_modulus(s.kind, s.expr, hints)


def has_sc_modulus(s, modulus, hints=()):
    return divisor_leq(section_minimal_modulus(s, hints), modulus)


def evaluate_section(s, point):
    """g(c) in k(c); the point must lie off the declared modulus."""
    if s.modulus.mult(point):
        raise InvalidDatum(f"{point!r} lies in the modulus of {s!r}")
    if s.kind == "Const":
        value = s.expr.constant_value()
        if point.is_infinity or point.degree == 1:
            return value
        L, _ = residue_field(point)
        return L.convert(value)
    try:
        value = evaluate_at(s.expr, point)
    except PoleError as exc:
        raise InvalidDatum(f"section {s!r} has a pole at {point!r} off its modulus") from exc
    if s.kind == "Gm":
        field = s.expr.field.base if point.is_infinity or point.degree == 1 else residue_field(point)[0]
        if field.is_zero(value):
            raise InvalidDatum(f"Gm section {s!r} vanishes at {point!r}: not a unit off its modulus")
    return value
