"""JSON payloads: schema validation and conversion to and from package objects."""

import json
from functools import lru_cache
from importlib import resources

import jsonschema

from .algebra.fields import make_field
from .errors import InvalidDatum, ParseError, SchemaError
from .forms import DifferentialForm
from .line import INFINITY, Divisor, FunctionField, Hint, make_point, point_at
from .parse import identifiers, parse_expression
from .relations import RelationDatum
from .sections import Section

RESERVED = {"t", "u", "zeta"}


@lru_cache(maxsize=None)
def load_schema(name):
    """The shipped schema ``name`` (e.g. "datum.v1")."""
    text = resources.files("kgeo.schemas").joinpath(f"{name}.json").read_text()
    return json.loads(text)


def check_schema(obj, name):
    try:
        jsonschema.validate(obj, load_schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{name}: {exc.message} (at {where})") from None


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None


def dumps(obj):
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# fields


def infer_field(spec, expressions):
    """(K, K(t)) from an explicit field spec or the identifiers in the payload."""
    names = set()
    for e in expressions:
        try:
            names |= identifiers(e)
        except ParseError as exc:
            raise SchemaError(f"cannot read expression {e!r}: {exc}") from None
    spec = spec or {}
    order = spec.get("zeta_order")
    if order is None:
        if "zeta" in names:
            raise SchemaError("expressions use zeta: declare field.zeta_order")
        order = 1
    if "variables" in spec:
        variables = tuple(spec["variables"])
        bad = [v for v in variables if v in RESERVED]
        if bad:
            raise SchemaError(f"reserved variable names: {bad}")
    else:
        variables = tuple(sorted(names - RESERVED))
    try:
        K = make_field(order, variables)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return K, FunctionField(K)


def field_to_json(K):
    return {"zeta_order": K.constants.order, "variables": list(K.variables)}


# ---------------------------------------------------------------------------
# points, divisors, hints


def load_point(text, F, certificate="auto"):
    if text.strip() == "inf":
        return INFINITY
    if "t" in identifiers(text):
        g = parse_expression(text, F)
        if g.den.degree != 0:
            raise InvalidDatum(f"point {text!r} must be a polynomial in t")
        return make_point(g.num, certificate)
    return point_at(F.base, parse_expression(text, F.base))


def point_to_json(p, K):
    if p.is_infinity:
        return "inf"
    if p.degree == 1:
        return K.format(-p.poly.coeffs[0])
    return p.poly.format("t")


def load_divisor(items, F):
    mults = {}
    for item in items:
        p = load_point(item["point"], F, item.get("certificate", "auto"))
        mults[p] = mults.get(p, 0) + item["mult"]
    return Divisor(mults)


def divisor_to_json(D, K):
    out = []
    for p, m in D.items():
        entry = {"point": point_to_json(p, K), "mult": m}
        if p.certificate.kind in ("assumed",):
            entry["certificate"] = "assume"
        out.append(entry)
    return out


def load_hint(h, F):
    if isinstance(h, str):
        text, cert = h, "auto"
    else:
        text, cert = h["poly"], h.get("certificate", "auto")
    g = parse_expression(text, F)
    if g.den.degree != 0:
        raise InvalidDatum(f"factor hint {text!r} must be a polynomial in t")
    return Hint(g.num, cert)


# ---------------------------------------------------------------------------
# sections and data


def load_section(obj, F):
    expr = parse_expression(obj["expr"], F)
    return Section(obj["kind"], expr, load_divisor(obj["modulus"], F), obj.get("group", "Gm"))


def section_to_json(s, K):
    out = {"kind": s.kind, "expr": s.expr.field.format(s.expr), "modulus": divisor_to_json(s.modulus, K)}
    if s.kind == "Const":
        out["group"] = s.group
    return out


def _datum_expressions(obj):
    out = [obj["f"]]
    for h in obj.get("factor_hints", []):
        out.append(h if isinstance(h, str) else h["poly"])
    for item in obj["modulus"]:
        out.append(item["point"])
    for s in obj["sections"]:
        out.append(s["expr"])
        out.extend(item["point"] for item in s["modulus"])
    return [e for e in out if e.strip() != "inf"]


def load_datum(obj, variant=None):
    """RelationDatum from a JSON object (schema-checked); ``variant`` overrides the payload."""
    check_schema(obj, "datum.v1")
    K, F = infer_field(obj.get("field"), _datum_expressions(obj))
    f = parse_expression(obj["f"], F)
    if not f:
        raise InvalidDatum("f must be nonzero")
    hints = [load_hint(h, F) for h in obj.get("factor_hints", [])]
    sections = [load_section(s, F) for s in obj["sections"]]
    return RelationDatum(
        variant or obj["variant"],
        load_divisor(obj["modulus"], F),
        f,
        sections,
        hints,
        obj.get("name", ""),
    )


def datum_to_json(datum):
    K = datum.base
    out = {
        "schema": "kgeo/datum/v1",
        "field": field_to_json(K),
        "variant": datum.variant,
        "modulus": divisor_to_json(datum.modulus, K),
        "f": datum.f.field.format(datum.f),
        "sections": [section_to_json(s, K) for s in datum.sections],
    }
    hints = []
    for h in datum.hints:
        text = h.poly.format("t")
        hints.append(text if h.certificate == "auto" else {"poly": text, "certificate": h.certificate})
    if hints:
        out["factor_hints"] = hints
    if datum.name:
        out["name"] = datum.name
    return out


# ---------------------------------------------------------------------------
# forms


def form_to_json(w):
    return {
        "degree": w.degree,
        "terms": [
            {"basis": [f"d{v}" for v in basis], "coeff": w.field.format(c)} for basis, c in w.items()
        ],
    }


def load_form(obj, field):
    check_schema(obj, "form.v1")
    terms = {}
    for term in obj["terms"]:
        basis = tuple(b[1:] for b in term["basis"])
        if len(basis) != obj["degree"]:
            raise SchemaError(f"basis {term['basis']} does not have degree {obj['degree']}")
        c = parse_expression(term["coeff"], field)
        terms[basis] = terms[basis] + c if basis in terms else c
    return DifferentialForm(field, obj["degree"], terms)


# ---------------------------------------------------------------------------
# zero-cycles


def _cycle_points(obj):
    return obj if isinstance(obj, list) else obj["points"]


def load_cycle(obj, shape=None):
    """(ZeroCycle, shape text or None) from a cycle payload.

    A point with ``min_poly`` (a polynomial in u) lives in K[u]/(min_poly) and
    its coordinates may use u.
    """
    from .algebra.extension import extend
    from .chow import CyclePoint, ZeroCycle

    check_schema(obj, "cycle.v1")
    points = _cycle_points(obj)
    spec = None if isinstance(obj, list) else obj.get("field")
    exprs = [c for p in points for c in p["coords"]] + [p["min_poly"] for p in points if "min_poly" in p]
    K, _ = infer_field(spec, exprs)
    if shape is None and isinstance(obj, dict):
        shape = obj.get("shape")
    terms = []
    for p in points:
        if "min_poly" in p:
            U = FunctionField(K, "u")
            g = parse_expression(p["min_poly"], U)
            if g.den.degree != 0 or g.num.degree < 1:
                raise InvalidDatum(f"min_poly {p['min_poly']!r} must be a nonconstant polynomial in u")
            L, _root = extend(K, g.num, p.get("certificate", "auto"))
        else:
            L = K
        coords = tuple(parse_expression(c, L) for c in p["coords"])
        terms.append((CyclePoint(L, coords), p["mult"]))
    return ZeroCycle(K, terms), shape


def cycle_to_json(z, shape=None):
    out = {"schema": "kgeo/cycle/v1", "field": field_to_json(z.base), "points": z.to_json()}
    if shape is not None:
        out["shape"] = shape if isinstance(shape, str) else shape.name()
    return out
