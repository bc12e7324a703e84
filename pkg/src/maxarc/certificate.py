"""JSON certificates for arcs and plain-text point lists."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .arcs import Arc, ArcError, dual_arc, fano_decomposition, infinity_data, verify_maximal_arc
from .conic import Conic, GeneralConic
from .field import Field, FieldSpec
from .plane import Plane, Triple

SCHEMA = "maxarc/1"


class CertificateError(ValueError):
    pass


def point_text(F: Field, p: Triple) -> str:
    return "(" + " : ".join(F.fmt(x) for x in p) + ")"


def line_text(F: Field, L: Triple) -> str:
    return "[" + " : ".join(F.fmt(x) for x in L) + "]"


def _conic_json(F: Field, C) -> object:
    if isinstance(C, Conic):
        return C.to_json(F)
    return {"general": [hex(x) for x in C.coeffs]}


def _conic_from_json(F: Field, d) -> Conic | GeneralConic:
    if isinstance(d, dict):
        return GeneralConic(*(int(x, 16) for x in d["general"]))
    return Conic.from_json(F, d)


def arc_certificate(arc: Arc, check=None, structure: bool = True) -> dict:
    plane, F = arc.plane, arc.field
    check = check or verify_maximal_arc(plane, arc.points)
    cert = {
        "schema": SCHEMA,
        "field": F.spec.to_json(),
        "kind": arc.kind,
        "degree": arc.degree,
        "nucleus": None if arc.nucleus is None else [F.fmt(x) for x in arc.nucleus],
        "conics": [_conic_json(F, c) for c in arc.conics],
        "point_count": len(arc.points),
        "points": [[hex(x) for x in plane.coords(i)] for i in sorted(arc.points)],
        "verified": check.ok,
        "histogram": {str(k): v for k, v in check.histogram.items()},
    }
    if structure and arc.degree == 8 and len(arc.conics) == 7:
        try:
            fano = fano_decomposition(arc)
            info = infinity_data(arc, fano)
            cert["fano"] = [list(s) for s in fano.subarcs]
            cert["infinity"] = {
                "lines": [[F.fmt(x) for x in L] for L in info.lines],
                "center": None if info.center is None else [F.fmt(x) for x in info.center],
                "type": "denniston" if info.denniston else "proper",
            }
        except ArcError as e:
            cert["fano"] = {"error": str(e)}
    return cert


def arc_from_certificate(cert: dict) -> Arc:
    if cert.get("schema") != SCHEMA:
        raise CertificateError(f"unknown schema {cert.get('schema')!r}")
    try:
        F = Field.from_spec(FieldSpec.from_json(cert["field"]))
        plane = Plane(F)
        pts = frozenset(plane.index(tuple(int(x, 16) for x in p)) for p in cert["points"])
        nucleus = cert.get("nucleus")
        nucleus = None if nucleus is None else tuple(F.parse(x) for x in nucleus)
        conics = tuple(_conic_from_json(F, c) for c in cert.get("conics", []))
        return Arc(plane, int(cert["degree"]), nucleus, conics, pts, cert.get("kind", ""))
    except (KeyError, TypeError, ValueError) as e:
        raise CertificateError(f"malformed certificate: {e}") from e


def read_points(text: str, F: Field) -> list[Triple]:
    """One point per line (or CSV row): three field elements in any accepted text form."""
    out = []
    for row in csv.reader(io.StringIO(text)):
        if len(row) == 1:
            row = row[0].replace("(", " ").replace(")", " ").replace(":", " ").split()
        row = [c.strip() for c in row if c.strip()]
        if not row or row[0].startswith("#"):
            continue
        if len(row) != 3:
            raise CertificateError(f"expected three coordinates, got {row}")
        out.append(tuple(F.parse(c) for c in row))
    return out


def load_arc(path: str | Path, F: Field | None = None) -> Arc:
    """Read a certificate (JSON) or a point list (needs the field)."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return arc_from_certificate(json.loads(text))
        except json.JSONDecodeError as e:
            raise CertificateError(f"bad JSON: {e}") from e
    if F is None:
        raise CertificateError("a point list needs --h to fix the field")
    plane = Plane(F)
    pts = frozenset(plane.index(p) for p in read_points(text, F))
    if not pts:
        raise CertificateError("empty point list")
    return Arc(plane, 0, None, (), pts, "points")


def points_csv(arc: Arc) -> str:
    F, plane = arc.field, arc.plane
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "z"])
    for i in sorted(arc.points):
        w.writerow([F.fmt(x) for x in plane.coords(i)])
    return buf.getvalue()


def dual_certificate(arc: Arc) -> dict:
    d = dual_arc(arc)
    cert = arc_certificate(d, structure=False)
    cert["dual_of_degree"] = arc.degree
    cert["points_are_lines"] = True
    return cert
