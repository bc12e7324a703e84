"""Canonical forms, isomorphism tests and automorphism orders for Denniston and Mathon arcs.

Two normal positions are used.

Arcs of Denniston type (all conics in one pencil) are moved so that the nucleus
is (0,0,1), the common line at infinity is z = 0 and the pencil is the
standard one.  What is left is the lambda-set, determined up to the maps
x -> mu * x^(2^l); its canonical key is the minimum over those maps.

Proper Mathon 8-arcs are moved so that the nucleus is (0,0,1), the
concurrency point of the seven lines at infinity is (0,1,0), a chosen subarc
has line at infinity z = 0 and a chosen conic of it becomes F_{a*,1,1}.  After
that every conic has beta = 1, and the remaining freedom is a Frobenius twist
plus the shear y -> y + x, which fixes every conic.  The key is the minimum
over subarc, conic and twist.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .arcs import Arc, ArcError, fano_decomposition, infinity_data
from .collineation import Collineation, mat_det
from .conic import Conic, GeneralConic, infinity_line, standard_alpha
from .field import Field
from .plane import Plane, Triple

Key = tuple


class IsomorphismError(ValueError):
    pass


def _form(C: Conic | GeneralConic) -> GeneralConic:
    return C.form() if isinstance(C, Conic) else C


def frame_map(plane: Plane, nucleus: Triple, axis_point: Triple | None, L: Triple) -> Collineation:
    """Linear map sending nucleus -> (0,0,1), axis_point -> (0,1,0) and L -> [0,0,1].

    Rows of the matrix are the new coordinate forms; the third is L.  With no
    axis point only the first two requirements on the nucleus and L are met.
    """
    F = plane.field
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    through_n = [plane.cross(nucleus, e) for e in basis]
    through_n = [r for r in through_n if any(r)]
    firsts = [plane.cross(nucleus, axis_point)] if axis_point is not None else through_n
    for r1 in firsts:
        for r2 in through_n:
            M = (r1, r2, tuple(L))
            if mat_det(F, M):
                return Collineation(M, 0)
    raise IsomorphismError("cannot build a frame: the line passes through the nucleus")


# -- Denniston type ----------------------------------------------------------------


def is_single_pencil(arc: Arc) -> bool:
    F = arc.field
    if len(arc.conics) < 2:
        return True
    L0 = infinity_line(F, arc.conics[0], arc.conics[1])
    return all(infinity_line(F, arc.conics[0], c) == L0 for c in arc.conics[2:])


@dataclass(frozen=True)
class PencilPosition:
    """A Denniston arc moved onto the standard pencil: conics F_{a*,1,lam}, lam in lams."""

    frame: Collineation
    lams: tuple[int, ...]


def denniston_position(arc: Arc) -> PencilPosition:
    plane, F = arc.plane, arc.field
    if not arc.conics:
        raise IsomorphismError("arc carries no conics")
    if not is_single_pencil(arc):
        raise IsomorphismError("conics do not lie in a single pencil")
    if len(arc.conics) == 1:
        c = _form(arc.conics[0])
        # any external line works for a single conic; use the first one found
        counts = plane.line_counts(arc.points)
        L = plane.coords(int(np.flatnonzero(counts == 0)[0]))
    else:
        L = infinity_line(F, arc.conics[0], arc.conics[1])
    g = frame_map(plane, arc.nucleus, None, L)
    framed = [g.form(F, _form(c)).to_conic(F) for c in arc.conics]
    beta = framed[0].beta
    lams = tuple(sorted(F.mul(c.lam, beta) for c in framed))
    return PencilPosition(g, lams)


def lambda_set_key(F: Field, lams) -> Key:
    """min over mu != 0 and Frobenius l of sorted(mu * lam^(2^l))."""
    best = None
    for l in range(F.h):
        tw = [F.frobenius(x, l) for x in lams]
        for x0 in tw:
            mu = F.inv(x0)  # the minimum always contains 1, so mu is one of these
            cand = tuple(sorted(F.mul(mu, x) for x in tw))
            if best is None or cand < best:
                best = cand
    return best


def g_a_stabilizer(F: Field, A) -> list[tuple[int, int]]:
    """All field maps x -> a x^(2^l) (a != 0, 0 <= l < h) stabilizing the set A."""
    S = frozenset(A) | {0}
    out = []
    for l in range(F.h):
        tw = [F.frobenius(x, l) for x in S]
        for a in range(1, F.q):
            if all(F.mul(a, x) in S for x in tw):
                out.append((a, l))
    return out


@dataclass(frozen=True)
class GAOrder:
    field_maps: int  # distinct maps x -> a x^(2^l)
    with_doubling: int  # counted with sigma in Aut GF(q^2), as in the semidirect-product formula

    def to_json(self) -> dict:
        return {"field_maps": self.field_maps, "with_doubling": self.with_doubling}


def g_a_order(F: Field, A) -> GAOrder:
    n = len(g_a_stabilizer(F, A))
    return GAOrder(n, 2 * n)


def denniston_automorphism_order(arc: Arc) -> int:
    """2(q+1) |G_A| for the lambda-set A of the arc."""
    F = arc.field
    pos = denniston_position(arc)
    return 2 * (F.q + 1) * g_a_order(F, pos.lams).field_maps


def standard_similitudes(F: Field, alpha: int | None = None) -> list[tuple[int, int, int, int]]:
    """2x2 matrices (a, b, c, d) multiplying Q0 = alpha x^2 + xy + y^2 by a nonzero scalar."""
    if alpha is None:
        alpha = standard_alpha(F)
    m = F.mul

    def Q0(x: int, y: int) -> int:
        return m(alpha, m(x, x)) ^ m(x, y) ^ m(y, y)

    ia = F.inv(alpha)
    out = []
    for a in range(F.q):
        for c in range(F.q):
            if a == 0 and c == 0:
                continue
            k = m(Q0(a, c), ia)
            for b in range(F.q):
                # polar form: a d + b c = k
                if a:
                    d = F.div(k ^ m(b, c), a)
                    cands = [d]
                else:
                    if m(b, c) != k:
                        continue
                    cands = range(F.q)
                for d in cands:
                    if Q0(b, d) == k and m(a, d) ^ m(b, c):
                        out.append((a, b, c, d))
    return out


def denniston_automorphisms_by_similitude(arc: Arc) -> int:
    """Count collineations fixing the arc among (similitude of Q0) x Frobenius.

    An independent check of :func:`denniston_automorphism_order`; cost grows as q^3.
    """
    F = arc.field
    pos = denniston_position(arc)
    alpha = standard_alpha(F)
    conics = {Conic(alpha, 1, lam) for lam in pos.lams}
    count = 0
    for a, b, c, d in standard_similitudes(F, alpha):
        for l in range(F.h):
            if F.frobenius(alpha, l) != alpha:
                continue
            g = Collineation(((a, b, 0), (c, d, 0), (0, 0, 1)), l)
            if all(g.conic(F, C) in conics for C in conics):
                count += 1
    return count


# -- proper Mathon 8-arcs ------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    subarc: int  # index into FanoStructure.subarcs
    conic: int  # index into arc.conics
    frob: int
    key: Key


def _mathon_frames(arc: Arc):
    plane, F = arc.plane, arc.field
    fano = fano_decomposition(arc)
    info = infinity_data(arc, fano)
    if info.center is None:
        raise IsomorphismError("arc is of Denniston type")
    forms = [_form(c) for c in arc.conics]
    for si, (sub, L) in enumerate(zip(fano.subarcs, info.lines)):
        A = frame_map(plane, arc.nucleus, info.center, L)
        framed = [A.form(F, f).to_conic(F) for f in forms]
        yield si, sub, A, framed, info


def mathon_candidates(arc: Arc) -> list[Candidate]:
    F = arc.field
    astar = standard_alpha(F)
    out = []
    for si, sub, _, framed, _ in _mathon_frames(arc):
        beta = framed[0].beta
        if any(c.beta != beta for c in framed):
            raise IsomorphismError("conics do not share beta in the concurrency frame")
        for ci in sub:
            C = framed[ci]
            ac = F.mul(C.alpha, beta)
            lci = F.inv(C.lam)
            base = [(F.mul(c.alpha, beta) ^ ac, F.mul(c.lam, lci)) for c in framed]
            for l in range(F.h):
                key = tuple(sorted((F.frobenius(a, l) ^ astar, F.frobenius(lam, l)) for a, lam in base))
                out.append(Candidate(si, ci, l, key))
    return out


def normalizing_map(arc: Arc, cand: Candidate, shear: int = 0) -> Collineation:
    """The collineation realising a candidate; ``shear`` picks one of the two roots."""
    plane, F = arc.plane, arc.field
    astar = standard_alpha(F)
    for si, _, A, framed, _ in _mathon_frames(arc):
        if si == cand.subarc:
            break
    C = framed[cand.conic]
    beta = C.beta
    u = F.solve_artin_schreier(F.mul(C.alpha, beta) ^ astar) ^ shear
    S = Collineation(((1, 0, 0), (u, beta, 0), (0, 0, F.sqrt(F.mul(C.lam, beta)))), 0)
    v = F.solve_artin_schreier(F.frobenius(astar, cand.frob) ^ astar)
    T = Collineation(((1, 0, 0), (v, 1, 0), (0, 0, 1)), 0)
    phi = Collineation(((1, 0, 0), (0, 1, 0), (0, 0, 1)), cand.frob)
    return T.compose(F, phi.compose(F, S.compose(F, A)))


def mathon_automorphisms(arc: Arc) -> list[Collineation]:
    """Automorphisms of a proper Mathon 8-arc, each verified on the point set."""
    F, plane = arc.field, arc.plane
    cands = mathon_candidates(arc)
    best = min(c.key for c in cands)
    hits = [c for c in cands if c.key == best]
    g0 = normalizing_map(arc, hits[0])
    g0_inv = g0.inverse(F)
    out = []
    for c in hits:
        for shear in (0, 1):
            g = g0_inv.compose(F, normalizing_map(arc, c, shear))
            if g.point_set(plane, arc.points) != arc.points:
                raise IsomorphismError("candidate map does not preserve the arc")
            out.append(g.normalized(F))
    if len(set(out)) != len(out):
        raise IsomorphismError("duplicate automorphisms")
    return out


# -- public dispatch -----------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    kind: str  # "denniston" or "mathon8"
    degree: int
    key: Key

    def text(self, F: Field) -> list[str]:
        if self.kind == "denniston":
            a = F.fmt(standard_alpha(F))
            return [f"alpha={a} beta=1 lambda={F.fmt(l)}" for l in self.key]
        return [f"alpha={F.fmt(a)} beta=1 lambda={F.fmt(l)}" for a, l in self.key]

    def to_json(self, F: Field) -> dict:
        return {"kind": self.kind, "degree": self.degree, "conics": self.text(F)}


def arc_type(arc: Arc) -> str:
    if is_single_pencil(arc):
        return "denniston"
    if arc.degree == 8:
        return "mathon8"
    raise IsomorphismError(f"unsupported arc: degree {arc.degree} not of Denniston type")


def canonical_form(arc: Arc) -> CanonicalForm:
    kind = arc_type(arc)
    if kind == "denniston":
        key = lambda_set_key(arc.field, denniston_position(arc).lams)
    else:
        key = min(c.key for c in mathon_candidates(arc))
    return CanonicalForm(kind, arc.degree, key)


def are_isomorphic(K1: Arc, K2: Arc) -> bool:
    if K1.field != K2.field:
        raise IsomorphismError("arcs live in different planes")
    if K1.degree != K2.degree:
        return False
    return canonical_form(K1) == canonical_form(K2)


def automorphism_order(arc: Arc) -> int:
    kind = arc_type(arc)
    if kind == "denniston":
        return denniston_automorphism_order(arc)
    return len(mathon_automorphisms(arc))


# -- orbits of 2-dimensional subspaces -------------------------------------------------


@dataclass
class SubspaceOrbits:
    """2-dim GF(2)-subspaces {0, a, b, a+b} of GF(q) (a < b < a+b) and their orbit labels."""

    field: Field
    triples: np.ndarray  # (n, 3) sorted nonzero elements
    labels: np.ndarray
    n_orbits: int

    @property
    def sizes(self) -> list[int]:
        return sorted(np.bincount(self.labels, minlength=self.n_orbits).tolist())

    def representatives(self) -> list[tuple[int, int, int]]:
        """First member (in enumeration order) of each orbit, normalized to contain 1."""
        F = self.field
        _, first = np.unique(self.labels, return_index=True)
        reps = []
        for i in sorted(first.tolist()):
            a, b, c = (int(x) for x in self.triples[i])
            ia = F.inv(a)
            reps.append(tuple(sorted((1, F.mul(b, ia), F.mul(c, ia)))))
        return reps

    def containing(self, x: int) -> np.ndarray:
        return np.flatnonzero((self.triples == x).any(axis=1))

    def per_orbit_through(self, x: int) -> list[int]:
        return np.bincount(self.labels[self.containing(x)], minlength=self.n_orbits).tolist()


def _subspace_table(F: Field) -> tuple[np.ndarray, np.ndarray]:
    q = F.q
    a = np.repeat(np.arange(1, q, dtype=np.int64), q - 1)
    b = np.tile(np.arange(1, q, dtype=np.int64), q - 1)
    c = a ^ b
    keep = (a < b) & (b < c)
    triples = np.stack([a[keep], b[keep], c[keep]], axis=1)
    lookup = np.full(q * q, -1, dtype=np.int64)
    lookup[triples[:, 0] * q + triples[:, 1]] = np.arange(len(triples))
    return triples, lookup


def _image_ids(F: Field, triples: np.ndarray, lookup: np.ndarray, img: np.ndarray) -> np.ndarray:
    img = np.sort(img, axis=1)
    return lookup[img[:, 0] * F.q + img[:, 1]]


def field_group_orbits(F: Field) -> SubspaceOrbits:
    """Orbits of 2-dim subspaces under x -> a x^(2^l), via the two generators x -> w x and x -> x^2."""
    triples, lookup = _subspace_table(F)
    n = len(triples)
    src = np.arange(n)
    by_w = _image_ids(F, triples, lookup, F.vmul(triples, F.generator))
    by_sq = _image_ids(F, triples, lookup, F.vmul(triples, triples))
    if (by_w < 0).any() or (by_sq < 0).any():
        raise IsomorphismError("generator image left the subspace table")
    rows = np.concatenate([src, src])
    cols = np.concatenate([by_w, by_sq])
    graph = coo_matrix((np.ones(2 * n, dtype=np.int8), (rows, cols)), shape=(n, n))
    k, labels = connected_components(graph, directed=True, connection="weak")
    return SubspaceOrbits(F, triples, labels, int(k))


@lru_cache(maxsize=None)
def pencil_4arc_count(F: Field) -> int:
    """Degree-4 Denniston arcs in the standard pencil: one per 2-dim subspace."""
    triples, _ = _subspace_table(F)
    return len(triples)
