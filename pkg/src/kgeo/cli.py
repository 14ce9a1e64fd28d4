"""Command line entry point: ``verify suite|datum|cycle|fuzz``.

Exit codes: 0 all checks pass, 1 a verdict failed, 2 bad input (schema,
syntax, malformed datum), 3 a polynomial could not be factored with the
given hints.
"""

import argparse
import json
import sys
import time

from . import io
from .errors import FactorizationIncomplete, InvalidDatum, ParseError, SchemaError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_FACTOR = 0, 1, 2, 3


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def _write(path, obj):
    with open(path, "w") as fh:
        fh.write(io.dumps(obj))


# ---------------------------------------------------------------------------
# suite


def cmd_suite(args, out, err):
    from .suite import run_suite, suite_json

    t0 = time.perf_counter()
    reports = run_suite(args.filter, args.seed)
    if not reports:
        err.write(f"no suite case matches {args.filter!r}\n")
        return EXIT_INPUT
    for r in reports:
        _emit(r.to_json(), out)
    if args.json:
        _write(args.json, suite_json(reports, args.seed))
    for r in reports:
        bad = [c.name for c in r.checks if not c.passed]
        line = f"{r.verdict.upper():4}  {r.case_id:14} {r.seconds:7.2f}s  {len(r.checks)} checks"
        if bad:
            line += "  failed: " + ", ".join(bad)
        if r.error:
            line += f"  error: {r.error}"
        err.write(line + "\n")
    ok = all(r.verdict == r.expected for r in reports)
    err.write(f"{sum(r.passed for r in reports)}/{len(reports)} cases pass "
              f"({time.perf_counter() - t0:.2f}s)\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# datum


def _datum_report(datum, wanted=None):
    from .relations import verify_vanishing

    rep = verify_vanishing(datum)
    obj = rep.to_json()
    if wanted:
        known = {r.name for r in rep.invariants}
        missing = sorted(set(wanted) - known)
        if missing:
            raise InvalidDatum(f"invariants not available for this signature: {missing}")
        for r in rep.invariants:
            r.asserted = r.asserted and r.name in wanted
        obj = rep.to_json()
    return rep, obj


def _summary(label, rep):
    v = rep.validation
    parts = [f"{'PASS' if rep.passed else 'FAIL':4}  {label}", f"{rep.variant}",
             "valid" if v.valid else "invalid: " + ", ".join(c.name for c in v.failures())]
    for r in rep.invariants:
        tag = "0" if r.zero else "nonzero"
        parts.append(f"{r.name}={tag}{'' if r.asserted else ' (reported)'}")
    return "  ".join(parts)


def cmd_datum(args, out, err):
    from .fuzz import parse_signature, random_data

    wanted = [x.strip() for x in args.invariants.split(",")] if args.invariants else None
    t0 = time.perf_counter()
    if args.fuzz is not None:
        if args.file:
            raise SchemaError("give either FILE or --fuzz, not both")
        data = random_data(parse_signature(args.signature), args.fuzz, args.seed, args.variant or "sum")
        labels = [f"random #{i}" for i in range(len(data))]
    else:
        if not args.file:
            raise SchemaError("missing datum FILE")
        datum = io.load_datum(io.read_json(args.file), args.variant)
        if args.hints:
            F = datum.f.field
            extra = [io.load_hint(h, F) for h in args.hints]
            datum = type(datum)(datum.variant, datum.modulus, datum.f, datum.sections,
                                list(datum.hints) + extra, datum.name)
        data = [datum]
        labels = [args.file]
    ok = True
    for label, datum in zip(labels, data):
        rep, obj = _datum_report(datum, wanted)
        _emit(obj, out)
        err.write(_summary(label, rep) + "\n")
        ok = ok and rep.passed
    err.write(f"{len(data)} datum(s) in {time.perf_counter() - t0:.2f}s\n")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# cycle


def cmd_cycle(args, out, err):
    from .chow import ProductShape, cycle_class

    z, shape = io.load_cycle(io.read_json(args.file), args.shape)
    if shape is None:
        raise SchemaError("no shape: pass --shape or put one in the payload")
    shape = ProductShape.parse(shape)
    cls = cycle_class(z, shape)
    obj = {"schema": "kgeo/cycle-class/v1", "shape": shape.name(), "class": cls.to_json(),
           "nonzero": cls.nonzero_components()}
    _emit(obj, out)
    err.write(f"{shape.name()}: degree {cls['degree']}, nonzero parts: {', '.join(obj['nonzero']) or 'none'}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# fuzz


def cmd_fuzz(args, out, err):
    from .fuzz import parse_signature, random_data
    from .relations import verify_vanishing

    sig = parse_signature(args.signature)
    t0 = time.perf_counter()
    data = random_data(sig, args.count, args.seed, args.variant)
    ok = 0
    for i, datum in enumerate(data):
        rep = verify_vanishing(datum)
        row = {"index": i, "passed": rep.passed, "datum": io.datum_to_json(datum)}
        if args.verbose:
            row["report"] = rep.to_json()
        _emit(row, out)
        ok += rep.passed
    if args.json:
        _write(args.json, {"schema": "kgeo/fuzz-report/v1", "signature": list(sig), "seed": args.seed,
                           "count": args.count, "passed": ok})
    err.write(f"{ok}/{len(data)} random {','.join(sig)} data pass ({time.perf_counter() - t0:.2f}s)\n")
    return EXIT_OK if ok == len(data) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="verify", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("suite", help="run the built-in verification cases")
    s.add_argument("--filter", help="substring of the case ids to run")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", metavar="PATH", help="write the deterministic suite report here")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("datum", help="validate a relation datum and check that it vanishes")
    s.add_argument("file", nargs="?")
    s.add_argument("--variant", choices=["sum", "max"])
    s.add_argument("--invariants", help="comma list of invariants to assert (default: all)")
    s.add_argument("--hints", nargs="*", default=[], help="extra factor hints, polynomials in t")
    s.add_argument("--fuzz", type=int, metavar="N", help="check N generated data instead of FILE")
    s.add_argument("--signature", default="ga,ga")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_datum)

    s = sub.add_parser("cycle", help="class of a zero-cycle on MxN^r or MxM")
    s.add_argument("file")
    s.add_argument("--shape")
    s.set_defaults(func=cmd_cycle)

    s = sub.add_parser("fuzz", help="randomized residue/invariant campaign")
    s.add_argument("--signature", default="ga,ga")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--variant", choices=["sum", "max"], default="sum")
    s.add_argument("--json", metavar="PATH")
    s.add_argument("--verbose", action="store_true", help="include the full report per datum")
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except FactorizationIncomplete as exc:
        err.write(f"factorization incomplete: {exc}\n")
        return EXIT_FACTOR
    except (SchemaError, ParseError, InvalidDatum) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:  # e.g. an unknown signature
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
