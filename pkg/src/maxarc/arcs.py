"""Construction and verification of maximal arcs from conics on a common nucleus."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .collineation import Collineation, elation, mat_det, mat_inv
from .conic import (
    Conic,
    ConicError,
    GeneralConic,
    compose,
    conic_points,
    infinity_line,
    is_admissible,
    trace_disjoint,
)
from .field import Field
from .plane import Plane, Triple

NUCLEUS: Triple = (0, 0, 1)


class ArcError(ValueError):
    pass


@dataclass(frozen=True)
class AdditiveSubgroup:
    elements: frozenset[int]
    basis: tuple[int, ...]

    @property
    def nonzero(self) -> list[int]:
        return sorted(self.elements - {0})

    def __len__(self) -> int:
        return len(self.elements)


def additive_subgroup(elements: Iterable[int]) -> AdditiveSubgroup:
    """Validate that ``elements`` (0 optional) is closed under addition."""
    els = set(elements) | {0}
    for x, y in itertools.combinations(els, 2):
        if x ^ y not in els:
            raise ArcError(f"not additively closed: {x:#x} + {y:#x} missing")
    basis: list[int] = []
    span = {0}
    for x in sorted(els):
        if x not in span:
            basis.append(x)
            span |= {s ^ x for s in span}
    return AdditiveSubgroup(frozenset(els), tuple(basis))


def span_subgroup(gens: Iterable[int]) -> AdditiveSubgroup:
    span = {0}
    for g in gens:
        span |= {s ^ g for s in span}
    return additive_subgroup(span)


@dataclass(frozen=True, eq=False)
class Arc:
    """A point set together with the conics it was built from.

    ``conics`` hold :class:`Conic` triples when the nucleus is (0,0,1) and
    :class:`GeneralConic` forms otherwise.  The point set is authoritative for
    verification; the conic list drives the algebra.
    """

    plane: Plane
    degree: int
    nucleus: Triple | None
    conics: tuple = ()
    points: frozenset[int] = frozenset()
    kind: str = ""

    @property
    def field(self) -> Field:
        return self.plane.field

    def __len__(self) -> int:
        return len(self.points)

    def same_points(self, other: "Arc") -> bool:
        return self.points == other.points

    def frame_conics(self) -> list[Conic]:
        if self.nucleus != NUCLEUS:
            raise ArcError("arc is not in a nucleus (0,0,1) frame")
        return [c if isinstance(c, Conic) else c.to_conic(self.field) for c in self.conics]

    def transformed(self, g: Collineation) -> "Arc":
        F = self.field
        conics = []
        for c in self.conics:
            img = g.form(F, c.form() if isinstance(c, Conic) else c)
            try:
                conics.append(img.to_conic(F))
            except ConicError:
                conics.append(img)
        nucleus = None if self.nucleus is None else self.plane.normalize(g.point(F, self.nucleus))
        return Arc(self.plane, self.degree, nucleus, tuple(conics), g.point_set(self.plane, self.points), self.kind)


def to_nucleus_frame(arc: Arc) -> tuple[Collineation, Arc]:
    """A collineation g with g(nucleus) = (0,0,1), and the image arc."""
    F = arc.field
    if arc.nucleus == NUCLEUS:
        return Collineation.identity(), arc
    n = arc.nucleus
    for b1, b2 in ((0, 1), (0, 2), (1, 2)):
        e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        cols = (e[b1], e[b2], n)
        Minv = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
        if mat_det(F, Minv):
            g = Collineation(mat_inv(F, Minv), 0)
            return g, arc.transformed(g)
    raise ArcError("could not build a frame")  # unreachable for a nonzero nucleus


# -- constructions ---------------------------------------------------------------


def arc_from_conics(plane: Plane, conics: Sequence[Conic], kind: str = "") -> Arc:
    pts: set[int] = {plane.index(NUCLEUS)}
    for C in conics:
        pts |= conic_points(plane, C)
    return Arc(plane, len(conics) + 1, NUCLEUS, tuple(conics), frozenset(pts), kind)


def denniston_arc(plane: Plane, alpha: int, A: Iterable[int] | AdditiveSubgroup) -> Arc:
    """Conics F_{alpha,1,lam}, lam in A \\ {0}, plus the nucleus: degree |A|."""
    F = plane.field
    if F.trace(alpha) != 1:
        raise ArcError("Denniston construction needs Tr(alpha) = 1")
    sub = A if isinstance(A, AdditiveSubgroup) else additive_subgroup(A)
    if len(sub) < 2:
        raise ArcError("subgroup must contain a nonzero element")
    return arc_from_conics(plane, [Conic(alpha, 1, lam) for lam in sub.nonzero], "denniston")


@dataclass(frozen=True)
class ClosureCheck:
    closed: bool
    witness: tuple[Conic, Conic] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.closed


def closed_set_check(F: Field, conics: Sequence[Conic], admissible: bool = True) -> ClosureCheck:
    """Closure under composition; with ``admissible`` also Tr(alpha*beta) = 1 for every member.

    Closure does not depend on which external line is z = 0, admissibility does.
    """
    members = set(conics)
    lams = [c.lam for c in conics]
    if len(set(lams)) != len(lams):
        return ClosureCheck(False, None, "repeated lambda")
    for C in conics:
        if admissible and not is_admissible(F, C):
            return ClosureCheck(False, (C, C), "Tr(alpha*beta) != 1")
    for C, D in itertools.combinations(conics, 2):
        if compose(F, C, D) not in members:
            return ClosureCheck(False, (C, D), "composition not in set")
    return ClosureCheck(True)


def mathon_arc(plane: Plane, conics: Sequence[Conic]) -> Arc:
    chk = closed_set_check(plane.field, conics)
    if not chk:
        raise ArcError(f"not a closed set of conics ({chk.reason})")
    return arc_from_conics(plane, sorted(conics, key=lambda c: c.lam), "mathon")


def mathon_exponent_conics(F: Field, k: int, l: int, m: int, lam_gens: Sequence[int]) -> list[Conic]:
    """x^2 + xy + (w^k + w^l lam + w^m lam^3) y^2 + lam z^2 for lam in span(lam_gens) \\ {0}."""
    out = []
    for lam in F.span(lam_gens)[1:]:
        beta = F.gen_pow(k) ^ F.mul(F.gen_pow(l), lam) ^ F.mul(F.gen_pow(m), F.pow(lam, 3))
        out.append(Conic(1, beta, lam))
    return out


# -- verification ------------------------------------------------------------------


@dataclass(frozen=True)
class ArcCheck:
    ok: bool
    degree: int | None
    size: int
    histogram: dict[int, int]
    witness_line: Triple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_maximal_arc(plane: Plane, points: Iterable[int]) -> ArcCheck:
    pts = frozenset(points)
    q = plane.q
    counts = plane.line_counts(pts)
    hist = dict(sorted(Counter(counts.tolist()).items()))
    nonzero = sorted(k for k in hist if k)
    if not pts:
        return ArcCheck(False, None, 0, hist, None, "empty point set")
    if len(pts) == plane.size:
        return ArcCheck(False, None, len(pts), hist, None, "whole plane")
    if len(nonzero) != 1:
        d = max(nonzero, key=lambda k: hist[k])
        bad = int(next(i for i, c in enumerate(counts.tolist()) if c not in (0, d)))
        return ArcCheck(False, None, len(pts), hist, plane.coords(bad),
                        f"line sizes {nonzero} are not of the form {{0, d}}")
    d = nonzero[0]
    if len(pts) != q * (d - 1) + d:
        return ArcCheck(False, d, len(pts), hist, None, "size is not q(d-1)+d")
    return ArcCheck(True, d, len(pts), hist)


# -- extension by a disjoint conic ----------------------------------------------------


def find_external_line(arc: Arc, C: Conic | GeneralConic | None = None) -> Triple:
    """First line, in canonical order, missing every point of arc (and C)."""
    plane = arc.plane
    pts = set(arc.points)
    if C is not None:
        pts |= conic_points(plane, C)
    counts = plane.line_counts(pts)
    for i, c in enumerate(counts.tolist()):
        if c == 0:
            return plane.coords(i)
    raise ArcError("no external line; inputs violate the hypotheses")


def shift_to_line(F: Field, L: Triple) -> Collineation:
    """Collineation fixing (0,0,1) and sending line L (not through it) to z = 0."""
    u, v, w = L
    if w == 0:
        raise ArcError("line passes through the nucleus")
    return Collineation(((1, 0, 0), (0, 1, 0), (u, v, w)), 0)


def extend_by_conic(arc: Arc, C: Conic) -> Arc:
    """The unique degree 2d Mathon arc containing arc and the disjoint conic C."""
    plane, F = arc.plane, arc.field
    if arc.nucleus != NUCLEUS:
        g, framed = to_nucleus_frame(arc)
        img = g.conic(F, C) if isinstance(C, Conic) else g.form(F, C)
        if not isinstance(img, Conic):
            img = img.to_conic(F)
        return extend_by_conic(framed, img).transformed(g.inverse(F))
    d = arc.degree
    if C.form().nucleus() != NUCLEUS:
        raise ArcError("conic does not share the nucleus")
    if d >= plane.q // 2:
        raise ArcError("extension needs d < q/2")
    base = arc.frame_conics()
    if conic_points(plane, C) & arc.points:
        raise ArcError("conic meets the arc")
    if any(b.lam == C.lam for b in base):
        raise ArcError("lambda collision with an arc conic")
    L = find_external_line(arc, C)
    s = shift_to_line(F, L)
    sb = [s.conic(F, b) for b in base]
    sc = s.conic(F, C)
    if not all(is_admissible(F, b) for b in sb + [sc]):
        raise ArcError("trace condition fails in the external-line frame")
    if not all(trace_disjoint(F, b, sc) for b in sb):
        raise ArcError("trace condition says conic is not disjoint")
    new = sb + [sc] + [compose(F, b, sc) for b in sb]
    if not closed_set_check(F, new):
        raise ArcError("extension is not closed in the external-line frame")
    back = s.inverse(F)
    conics = [back.conic(F, c) for c in new]
    out = arc_from_conics(plane, sorted(conics, key=lambda c: c.lam), "mathon")
    if not closed_set_check(F, out.conics, admissible=False):
        raise ArcError("extension is not closed")
    return out


def third_conic(F: Field, C: Conic, D: Conic) -> Conic:
    """The third conic of the unique degree-4 Denniston arc containing two disjoint conics."""
    return compose(F, C, D)


@dataclass(frozen=True)
class SecantCensus:
    secants_to_arc: int
    external_to_arc: int
    secants_to_union: int
    meeting_conic_only: int
    predicted: dict[str, int]


def secant_census(arc: Arc, C: Conic) -> SecantCensus:
    """Brute-force line classification against the counting formulas for M and M u C."""
    plane = arc.plane
    q, d = plane.q, arc.degree
    cm = plane.line_counts(arc.points)
    cc = plane.line_counts(conic_points(plane, C))
    meets_m = cm > 0
    meets_c = cc > 0
    predicted = {
        "secants_to_arc": ((d - 1) * q * q + (2 * d - 1) * q) // d + 1,
        "external_to_arc": (q + 1) * (q // d - 1) + 1,
        "secants_to_union": ((2 * d - 1) * q * q + (4 * d - 1) * q) // (2 * d) + 1,
        "meeting_conic_only": (q * q + q) // (2 * d),
    }
    return SecantCensus(
        int(meets_m.sum()),
        int((~meets_m).sum()),
        int((meets_m | meets_c).sum()),
        int((meets_c & ~meets_m).sum()),
        predicted,
    )


# -- duality ---------------------------------------------------------------------


def dual_arc(arc: Arc) -> Arc:
    """External lines of a degree-d arc, as a degree q/d arc of the dual plane."""
    plane = arc.plane
    counts = plane.line_counts(arc.points)
    lines = frozenset(i for i, c in enumerate(counts.tolist()) if c == 0)
    return Arc(plane, plane.q // arc.degree, None, (), lines, "dual")


# -- structure of 8-arcs -------------------------------------------------------------


@dataclass(frozen=True)
class FanoStructure:
    conics: tuple[Conic, ...]
    subarcs: tuple[tuple[int, int, int], ...]

    def lines_through(self, i: int) -> list[tuple[int, int, int]]:
        return [s for s in self.subarcs if i in s]

    def is_fano(self) -> bool:
        if len(self.conics) != 7 or len(self.subarcs) != 7:
            return False
        if any(len(set(s)) != 3 for s in self.subarcs):
            return False
        if any(len(self.lines_through(i)) != 3 for i in range(7)):
            return False
        return all(len(set(a) & set(b)) == 1 for a, b in itertools.combinations(self.subarcs, 2))


def fano_decomposition(arc: Arc) -> FanoStructure:
    if arc.degree != 8 or len(arc.conics) != 7:
        raise ArcError("Fano decomposition needs a degree-8 arc built from 7 conics")
    _, framed = to_nucleus_frame(arc)
    F = arc.field
    conics = framed.frame_conics()
    pos = {c: i for i, c in enumerate(conics)}
    subs = set()
    for i, j in itertools.combinations(range(7), 2):
        k = pos.get(compose(F, conics[i], conics[j]))
        if k is None:
            raise ArcError("conic set is not closed; not a Mathon 8-arc")
        subs.add(tuple(sorted((i, j, k))))
    fs = FanoStructure(tuple(arc.conics), tuple(sorted(subs)))
    if not fs.is_fano():
        raise ArcError("subarc incidence is not PG(2,2)")
    return fs


@dataclass(frozen=True)
class InfinityData:
    lines: tuple[Triple, ...]
    center: Triple | None  # None for Denniston type

    @property
    def denniston(self) -> bool:
        return self.center is None


def infinity_data(arc: Arc, fano: FanoStructure | None = None) -> InfinityData:
    fano = fano or fano_decomposition(arc)
    plane, F = arc.plane, arc.field
    lines = []
    for i, j, k in fano.subarcs:
        L = infinity_line(F, arc.conics[i], arc.conics[j])
        if infinity_line(F, arc.conics[i], arc.conics[k]) != L:
            raise ArcError("subarc conics do not span one pencil")
        lines.append(L)
    if len(set(lines)) == 1:
        return InfinityData(tuple(lines), None)
    if len(set(lines)) != 7:
        raise ArcError("lines at infinity are neither equal nor distinct")
    c = plane.meet(lines[0], lines[1])
    if not all(plane.incident(c, L) for L in lines):
        raise ArcError("lines at infinity are not concurrent")
    return InfinityData(tuple(lines), c)


def elation_involution(arc: Arc, info: InfinityData | None = None) -> Collineation:
    """The elation with center the concurrency point and axis through the nucleus."""
    info = info or infinity_data(arc)
    if info.center is None:
        raise ArcError("Denniston-type 8-arc: no concurrency point")
    plane, F = arc.plane, arc.field
    c = info.center
    axis = plane.line_through(arc.nucleus, c)
    first = arc.conics[0]
    form0 = (first.form() if isinstance(first, Conic) else first).normalized(F)
    for k in range(1, F.q):
        g = elation(F, c, axis, k)
        if g.form(F, form0).normalized(F) == form0:
            for C in arc.conics:
                f = (C.form() if isinstance(C, Conic) else C).normalized(F)
                if g.form(F, f).normalized(F) != f:
                    raise ArcError("elation fixes one conic but not all")
            return g
    raise ArcError("no elation with this center and axis fixes the conics")
