"""maxarc command-line interface.

Exit codes: 0 success, 2 usage error, 3 verification failure, 4 golden mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .arcs import (
    ArcError,
    denniston_arc,
    extend_by_conic,
    mathon_arc,
    mathon_exponent_conics,
    verify_maximal_arc,
)
from .census import (
    CensusError,
    classify_denniston4,
    classify_mathon8,
    threads_from_env,
)
from .certificate import (
    CertificateError,
    arc_certificate,
    dual_certificate,
    load_arc,
    line_text,
    points_csv,
)
from .conic import Conic, ConicError
from .field import Field, FieldError, field_with_relation, parse_polynomial, PG32_RELATION
from .isomorphism import IsomorphismError, are_isomorphic, automorphism_order, canonical_form
from .plane import Plane

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_GOLDEN = 0, 2, 3, 4
SCHEMA = "maxarc/1"


class UsageError(Exception):
    pass


# -- helpers -------------------------------------------------------------------------


def make_field(args) -> Field:
    if args.h is None:
        raise UsageError("--h is required")
    if args.h < 1:
        raise UsageError("--h must be positive")
    irr = parse_polynomial(args.irreducible) if args.irreducible else None
    relation = args.relation
    if relation is None and args.h == 5:
        relation = PG32_RELATION
    if relation:
        return field_with_relation(args.h, relation, irr)
    return Field(args.h, irr)


def element_list(F: Field, text: str) -> list[int]:
    return [F.parse(x) for x in text.split(",") if x.strip()]


def parse_conic(F: Field, text: str) -> Conic:
    parts = [p for p in text.replace(":", ",").split(",") if p.strip()]
    if len(parts) != 3:
        raise UsageError(f"conic needs alpha,beta,lambda: {text!r}")
    return Conic(*(F.parse(p) for p in parts))


def emit(args, payload: dict, text_lines: list[str] | None = None, csv_text: str | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2, default=str)
    elif fmt == "csv":
        out = csv_text if csv_text is not None else _flat_csv(payload)
    else:
        out = "\n".join(text_lines if text_lines is not None else _flat_text(payload))
    if getattr(args, "output", None):
        Path(args.output).write_text(out + ("" if out.endswith("\n") else "\n"))
    else:
        print(out)


def _flat_items(payload: dict, prefix: str = ""):
    for k, v in payload.items():
        if isinstance(v, dict):
            yield from _flat_items(v, f"{prefix}{k}.")
        elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            yield f"{prefix}{k}", f"<{len(v)} items>"
        else:
            yield f"{prefix}{k}", v if not isinstance(v, list) else " ".join(map(str, v))


def _flat_csv(payload: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for k, v in _flat_items(payload):
        w.writerow([k, v])
    return buf.getvalue()


def _flat_text(payload: dict) -> list[str]:
    return [f"{k}: {v}" for k, v in _flat_items(payload)]


def progress_printer(args):
    if getattr(args, "quiet", False):
        return None
    return lambda msg: print(f"[maxarc] {msg}", file=sys.stderr, flush=True)


def plot_dir(args) -> Path | None:
    return Path(args.plot_dir) if getattr(args, "plot_dir", None) else None


# -- commands ---------------------------------------------------------------------------


def cmd_field_info(args) -> int:
    F = make_field(args)
    payload = {
        "schema": SCHEMA,
        "field": F.spec.to_json(),
        "q": F.q,
        "modulus": bin(F.modulus),
        "generator": hex(F.generator),
        "trace_of_one": F.trace(1),
        "trace_zero_count": sum(1 for x in range(F.q) if F.trace(x) == 0) if F.q <= 1 << 16 else None,
        "standard_alpha": F.fmt(next(a for a in range(1, F.q) if F.trace(a) == 1)),
    }
    emit(args, payload)
    return EXIT_OK


def _finish_arc(args, arc) -> int:
    check = verify_maximal_arc(arc.plane, arc.points)
    cert = arc_certificate(arc, check)
    if args.no_verify:
        cert["verified"] = None
    d = plot_dir(args)
    if d:
        from .plotting import arc_figure, histogram_figure

        arc_figure(arc, d / "arc.png")
        histogram_figure(check, d / "histogram.png")
    emit(args, cert, csv_text=points_csv(arc),
         text_lines=[f"degree {arc.degree}, {len(arc.points)} points, histogram {cert['histogram']}",
                     *[c.equation(arc.field) if isinstance(c, Conic) else str(c) for c in arc.conics]])
    if not args.no_verify and not check.ok:
        print(f"verification failed: {check.reason}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_construct(args) -> int:
    kind = args.kind
    if kind in ("extend", "dual"):
        arc = load_arc(args.certificate)
        F = arc.field
        if kind == "dual":
            cert = dual_certificate(arc)
            emit(args, cert)
            return EXIT_OK if cert["verified"] else EXIT_VERIFY
        if not args.conic:
            raise UsageError("extend needs --conic alpha,beta,lambda")
        return _finish_arc(args, extend_by_conic(arc, parse_conic(F, args.conic)))
    F = make_field(args)
    plane = Plane(F)
    if kind == "denniston":
        if not args.subgroup:
            raise UsageError("denniston needs --subgroup")
        alpha = F.parse(args.alpha) if args.alpha else next(a for a in range(1, F.q) if F.trace(a) == 1)
        arc = denniston_arc(plane, alpha, element_list(F, args.subgroup))
    elif kind == "mathon-set":
        if not args.conics:
            raise UsageError("mathon-set needs --conics 'a,b,l;a,b,l;...'")
        arc = mathon_arc(plane, [parse_conic(F, c) for c in args.conics.split(";") if c.strip()])
    elif kind == "mathon-exp":
        if not args.klm:
            raise UsageError("mathon-exp needs --klm k,l,m")
        try:
            k, l, m = (int(x) for x in args.klm.split(","))
        except ValueError:
            raise UsageError("--klm takes three integers") from None
        span = element_list(F, args.span) if args.span else [1, F.generator, F.gen_pow(9)]
        arc = mathon_arc(plane, mathon_exponent_conics(F, k, l, m, span))
    else:
        raise UsageError(f"unknown construction {kind!r}")
    return _finish_arc(args, arc)


def cmd_verify(args) -> int:
    F = make_field(args) if args.h is not None else None
    arc = load_arc(args.input, F)
    check = verify_maximal_arc(arc.plane, arc.points)
    payload = {
        "schema": SCHEMA,
        "ok": check.ok,
        "degree": check.degree,
        "size": check.size,
        "histogram": {str(k): v for k, v in check.histogram.items()},
        "reason": check.reason,
        "witness_line": None if check.witness_line is None else line_text(arc.field, check.witness_line),
    }
    d = plot_dir(args)
    if d:
        from .plotting import histogram_figure

        histogram_figure(check, d / "histogram.png")
    emit(args, payload)
    return EXIT_OK if check.ok else EXIT_VERIFY


def cmd_aut(args) -> int:
    arc = load_arc(args.input)
    payload = {"schema": SCHEMA, "degree": arc.degree, "automorphism_order": automorphism_order(arc),
               "canonical_form": canonical_form(arc).to_json(arc.field)}
    emit(args, payload)
    return EXIT_OK


def cmd_isomorphic(args) -> int:
    a, b = load_arc(args.first), load_arc(args.second)
    iso = are_isomorphic(a, b)
    emit(args, {"schema": SCHEMA, "isomorphic": iso})
    return EXIT_OK


def cmd_census(args) -> int:
    F = make_field(args)
    prog = progress_printer(args)
    if args.which == "denniston4":
        res = classify_denniston4(F)
        payload = {"schema": SCHEMA, **res.to_json(F)}
        d = plot_dir(args)
        if d:
            from .plotting import orbit_figure

            orbit_figure(res.orbit_sizes, d / "orbits.png", F.q)
        emit(args, payload, text_lines=[f"q={F.q}: {res.arc_count} arcs in the standard pencil, "
                                        f"{res.n_classes} class(es)"])
        return EXIT_OK
    if F.h % 2 == 0 or F.q < 32:
        raise UsageError(f"q={F.q} is below the construction floor or has even degree; "
                         "degree-8 censuses need q = 2^m, m odd, m >= 5")
    res = classify_mathon8(F, force=args.force, threads=args.threads or threads_from_env(), progress=prog)
    payload = {
        "schema": SCHEMA,
        "q": F.q,
        "within_hypotheses": res.within_hypotheses,
        "denniston_classes": len(res.reps4),
        "d_conics": res.d_conics,
        "m_conics": res.m_conics,
        "arcs_through_first_base": len(res.arcs),
        "class_count": res.class_count,
        "class_sizes_first_base": [len(v) for v in res.classes.values()],
        "formula": None if res.formula is None else str(res.formula),
        "automorphism_orders": [automorphism_order(K) for K in res.representatives],
        "representatives": [canonical_form(K).to_json(F) for K in res.representatives],
        "failures": res.failures,
    }
    if not res.within_hypotheses:
        payload["note"] = "outside the class-count formula hypotheses: comparison suppressed"
    emit(args, payload, text_lines=[f"q={F.q}: {len(res.arcs)} arcs through the base 4-arc, "
                                    f"{res.class_count} class(es)"])
    return EXIT_VERIFY if res.failures else EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import reproduce_pg32_report

    irr = parse_polynomial(args.irreducible) if args.irreducible else None
    report = reproduce_pg32_report(irr, progress=progress_printer(args))
    payload = report.to_json()
    lines = [f"{c.status:8s} {c.name}" + (f"  ({c.note})" if c.note else "") for c in report.checks]
    lines.append(f"summary: {payload['summary']}")
    if args.csv:
        Path(args.csv).write_text(report.t_table_csv())
    d = plot_dir(args)
    if d:
        from .census import disjoint_conic_census
        from .plotting import arc_figure, census_figure

        F = report.field
        base = [1, F.generator, F.generator ^ 1]
        census_figure(disjoint_conic_census(F, base).cells, F, d / "census.png")
        arc_figure(report.constructed_arc, d / "constructed_arc.png")
    emit(args, payload, text_lines=lines, csv_text=report.t_table_csv())
    return EXIT_GOLDEN if report.mismatches(strict=args.strict) else EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--h", type=int, help="extension degree: q = 2^h")
    common.add_argument("--irreducible", help="modulus, e.g. x^5+x^2+1 or 0x25")
    common.add_argument("--relation", help="relation the generator must satisfy, e.g. w^18+w=1")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", "-o", help="write the main output here instead of stdout")
    common.add_argument("--plot-dir", help="directory for figures")
    common.add_argument("--quiet", action="store_true", help="suppress progress lines")

    p = argparse.ArgumentParser(prog="maxarc", description="Maximal arcs from conics in PG(2, 2^h).")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("field-info", parents=[common], help="field parameters").set_defaults(func=cmd_field_info)

    c = sub.add_parser("construct", parents=[common], help="build an arc certificate")
    c.add_argument("kind", choices=("denniston", "mathon-set", "mathon-exp", "extend", "dual"))
    c.add_argument("--alpha", help="pencil parameter (default: smallest trace-1 element)")
    c.add_argument("--subgroup", help="comma-separated additive subgroup, e.g. 0,1,w,w+1")
    c.add_argument("--conics", help="semicolon-separated alpha,beta,lambda triples")
    c.add_argument("--klm", help="exponents k,l,m of the exponent family")
    c.add_argument("--span", help="generators of the lambda-subgroup (default 1,w,w^9)")
    c.add_argument("--certificate", help="input certificate for extend/dual")
    c.add_argument("--conic", help="alpha,beta,lambda of the conic to extend by")
    c.add_argument("--no-verify", action="store_true")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="check a certificate or point list")
    v.add_argument("input")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("aut", parents=[common], help="automorphism order and canonical form")
    a.add_argument("input")
    a.set_defaults(func=cmd_aut)

    i = sub.add_parser("isomorphic", parents=[common], help="compare two arcs")
    i.add_argument("first")
    i.add_argument("second")
    i.set_defaults(func=cmd_isomorphic)

    s = sub.add_parser("census", parents=[common], help="class counts")
    s.add_argument("which", choices=("denniston4", "mathon8"))
    s.add_argument("--force", action="store_true", help="run past the scale guard")
    s.add_argument("--threads", type=int, help="worker processes (default MAXARC_THREADS or 1)")
    s.set_defaults(func=cmd_census)

    r = sub.add_parser("reproduce-pg32", parents=[common], help="full PG(2,32) reproduction with golden diff")
    r.add_argument("--strict", action="store_true", help="treat confirmed errata as mismatches")
    r.add_argument("--csv", help="also write the t-tables as CSV here")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, CertificateError, FieldError, ConicError, ArcError, CensusError, IsomorphismError) as e:
        print(f"maxarc: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"maxarc: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
