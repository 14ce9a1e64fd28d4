"""Exact arithmetic: constant fields, rational function fields, extensions."""

from .certify import Certificate, certify_irreducible
from .extension import ExtElement, Extension, extend
from .fields import BaseField, ConstantField, make_field
from .upoly import UPoly

__all__ = [
    "BaseField",
    "Certificate",
    "ConstantField",
    "ExtElement",
    "Extension",
    "UPoly",
    "certify_irreducible",
    "extend",
    "make_field",
]
