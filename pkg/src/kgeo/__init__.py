"""Exact computations with relation data of geometric type on the projective line."""

from .algebra import Extension, extend, make_field
from .chow import (
    ProductShape,
    ZeroCycle,
    cycle_class,
    push_datum_to_cycle,
    verify_rational_equivalence,
)
from .errors import (
    AlgebraError,
    FactorizationIncomplete,
    InvalidDatum,
    KGeoError,
    ParseError,
    PoleError,
    ReducibleError,
    SchemaError,
)
from .forms import DifferentialForm, d, dlog, residue_at, residue_sum, trace_form, wedge
from .line import (
    INFINITY,
    Divisor,
    FunctionField,
    Hint,
    factor_supported,
    in_G,
    point_at,
    principal_divisor,
    valuation,
)
from .parse import parse_expression
from .relations import (
    MAX,
    SUM,
    RelationDatum,
    SymbolSum,
    dlog_invariant,
    expand_relation,
    gaga_invariant,
    omega_invariant,
    residue_check,
    tame_profile,
    validate_datum,
    verify_vanishing,
)
from .sections import Section, minimal_modulus

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "DifferentialForm", "Divisor", "Extension", "FactorizationIncomplete",
    "FunctionField", "Hint", "INFINITY", "InvalidDatum", "KGeoError", "MAX", "ParseError",
    "PoleError", "ProductShape", "ReducibleError", "RelationDatum", "SUM", "SchemaError",
    "Section", "SymbolSum", "ZeroCycle", "cycle_class", "d", "dlog", "dlog_invariant",
    "expand_relation", "extend", "factor_supported", "gaga_invariant", "in_G", "make_field",
    "minimal_modulus", "omega_invariant", "parse_expression", "point_at", "principal_divisor",
    "push_datum_to_cycle", "residue_at", "residue_check", "residue_sum", "tame_profile",
    "trace_form", "valuation", "validate_datum", "verify_rational_equivalence",
    "verify_vanishing", "wedge",
]
