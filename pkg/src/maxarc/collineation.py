"""Semilinear collineations of PG(2, q).

A collineation is a pair (M, l) acting as p -> M p^(2^l).  Lines transform by
the inverse transpose and conics by Q'(p) = Q^sigma(M^-1 p), i.e. the form
matrix goes to (M^-1)^T A^sigma M^-1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .conic import Conic, ConicError, GeneralConic
from .field import Field
from .plane import Plane, Triple

Matrix = tuple[Triple, Triple, Triple]

IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def mat_mul(F: Field, A: Matrix, B: Matrix) -> Matrix:
    m = F.mul
    return tuple(
        tuple(m(A[i][0], B[0][j]) ^ m(A[i][1], B[1][j]) ^ m(A[i][2], B[2][j]) for j in range(3))
        for i in range(3)
    )


def mat_vec(F: Field, A: Matrix, v: Iterable[int]) -> Triple:
    x, y, z = v
    m = F.mul
    return tuple(m(r[0], x) ^ m(r[1], y) ^ m(r[2], z) for r in A)


def mat_det(F: Field, A: Matrix) -> int:
    m = F.mul
    (a, b, c), (d, e, f), (g, h, i) = A
    return m(a, m(e, i) ^ m(f, h)) ^ m(b, m(d, i) ^ m(f, g)) ^ m(c, m(d, h) ^ m(e, g))


def mat_inv(F: Field, A: Matrix) -> Matrix:
    det = mat_det(F, A)
    if det == 0:
        raise ValueError("singular matrix")
    di = F.inv(det)
    m = F.mul
    (a, b, c), (d, e, f), (g, h, i) = A
    adj = (
        (m(e, i) ^ m(f, h), m(b, i) ^ m(c, h), m(b, f) ^ m(c, e)),
        (m(d, i) ^ m(f, g), m(a, i) ^ m(c, g), m(a, f) ^ m(c, d)),
        (m(d, h) ^ m(e, g), m(a, h) ^ m(b, g), m(a, e) ^ m(b, d)),
    )
    return tuple(tuple(m(x, di) for x in row) for row in adj)


def mat_frob(F: Field, A: Matrix, l: int) -> Matrix:
    return tuple(tuple(F.frobenius(x, l) for x in row) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def form_matrix(C: GeneralConic) -> Matrix:
    # upper-triangular: Q(p) = p^T A p
    return ((C.a, C.d, C.f), (0, C.b, C.e), (0, 0, C.c))


def form_from_matrix(B: Matrix) -> GeneralConic:
    return GeneralConic(B[0][0], B[1][1], B[2][2], B[0][1] ^ B[1][0], B[1][2] ^ B[2][1], B[0][2] ^ B[2][0])


def substitute(F: Field, C: GeneralConic, N: Matrix) -> GeneralConic:
    """The form p -> Q(N p)."""
    B = mat_mul(F, transpose(N), mat_mul(F, form_matrix(C), N))
    return form_from_matrix(B)


@dataclass(frozen=True)
class Collineation:
    matrix: Matrix
    frob: int = 0

    # -- group structure -----------------------------------------------------------

    @classmethod
    def identity(cls) -> "Collineation":
        return cls(IDENTITY, 0)

    def compose(self, F: Field, other: "Collineation") -> "Collineation":
        """self after other."""
        M = mat_mul(F, self.matrix, mat_frob(F, other.matrix, self.frob))
        return Collineation(M, (self.frob + other.frob) % F.h)

    def inverse(self, F: Field) -> "Collineation":
        l = (-self.frob) % F.h
        return Collineation(mat_frob(F, mat_inv(F, self.matrix), l), l)

    def normalized(self, F: Field) -> "Collineation":
        """Scale the matrix so its first nonzero entry is 1 (projective equality)."""
        lead = next(x for row in self.matrix for x in row if x)
        i = F.inv(lead)
        return Collineation(tuple(tuple(F.mul(x, i) for x in row) for row in self.matrix), self.frob % F.h)

    def equals(self, F: Field, other: "Collineation") -> bool:
        return self.normalized(F) == other.normalized(F)

    def is_identity(self, F: Field) -> bool:
        return self.equals(F, Collineation.identity())

    # -- actions -----------------------------------------------------------------

    def point(self, F: Field, p: Iterable[int]) -> Triple:
        return mat_vec(F, self.matrix, (F.frobenius(x, self.frob) for x in p))

    def line(self, F: Field, L: Iterable[int]) -> Triple:
        Minv_T = transpose(mat_inv(F, self.matrix))
        return mat_vec(F, Minv_T, (F.frobenius(x, self.frob) for x in L))

    def form(self, F: Field, C: GeneralConic) -> GeneralConic:
        Cs = GeneralConic(*(F.frobenius(x, self.frob) for x in C.coeffs))
        return substitute(F, Cs, mat_inv(F, self.matrix))

    def conic(self, F: Field, C: Conic) -> Conic | GeneralConic:
        """Image of a frame conic; stays a Conic when the image still has nucleus (0,0,1)."""
        img = self.form(F, C.form())
        try:
            return img.to_conic(F)
        except ConicError:
            return img

    def point_index(self, plane: Plane, i: int) -> int:
        return plane.index(self.point(plane.field, plane.coords(i)))

    def point_set(self, plane: Plane, pts: Iterable[int]) -> frozenset[int]:
        return frozenset(self.point_index(plane, i) for i in pts)

    def to_json(self, F: Field) -> dict:
        return {"matrix": [[hex(x) for x in row] for row in self.matrix], "frobenius": self.frob}

    @classmethod
    def from_json(cls, d: dict) -> "Collineation":
        return cls(tuple(tuple(int(x, 16) for x in row) for row in d["matrix"]), int(d["frobenius"]))


def apply(F: Field, g: Collineation, x):
    """Dispatch on the kind of object: point triple, GeneralConic, Conic, or Arc."""
    if isinstance(x, Conic):
        return g.conic(F, x)
    if isinstance(x, GeneralConic):
        return g.form(F, x)
    if hasattr(x, "transformed"):
        return x.transformed(g)
    return g.point(F, x)


def random_collineation(F: Field, rng: random.Random) -> Collineation:
    while True:
        M = tuple(tuple(rng.randrange(F.q) for _ in range(3)) for _ in range(3))
        if mat_det(F, M):
            return Collineation(M, rng.randrange(F.h))


def theta(F: Field, lam: int, t: int, sigma_exp: int) -> Collineation:
    """The map sending C_lam onto C_1 while fixing (0,0,1) and (0,1,0).

    Matrix rows: (s, 0, 0), (t, s, 0), (sqrt(s t + t^2), 0, 1) with
    s = (lam^(-1/2))^sigma, acting as p -> M p^sigma.
    """
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    s = F.frobenius(F.inv(F.sqrt(lam)), sigma_exp)
    r = F.sqrt(F.mul(s, t) ^ F.mul(t, t))
    return Collineation(((s, 0, 0), (t, s, 0), (r, 0, 1)), sigma_exp % F.h)


theta_family = theta


def elation(F: Field, center: Triple, axis: Triple, k: int = 1) -> Collineation:
    """p -> p + k * axis(p) * center; an involution in characteristic 2."""
    m = F.mul
    M = tuple(
        tuple((1 if i == j else 0) ^ m(k, m(center[i], axis[j])) for j in range(3)) for i in range(3)
    )
    return Collineation(M, 0)


def configuration_stabilizer(F: Field, alpha: int | None = None) -> list[Collineation]:
    """Collineations fixing C = F_{alpha,1,1}, (0,0,1), (0,1,0) and the line z = 0.

    Built by filtering the theta family for lambda = 1 (these fix C_1, (0,0,1)
    and (0,1,0)) down to the members that also fix z = 0; for alpha != 1 the
    shear y -> y + u x absorbs alpha^sigma - alpha.
    """
    from .conic import standard_alpha

    if alpha is None:
        alpha = standard_alpha(F)
    target = Conic(alpha, 1, 1)
    out = []
    for l in range(F.h):
        shift = F.frobenius(alpha, l) ^ alpha
        for u in range(F.q):
            if F.mul(u, u) ^ u != shift:
                continue
            g = Collineation(((1, 0, 0), (u, 1, 0), (0, 0, 1)), l)
            if g.conic(F, target) == target and g.line(F, (0, 0, 1)) == (0, 0, 1):
                out.append(g)
    return out


def theta_stabilizer_filter(F: Field) -> list[Collineation]:
    """Members of the lambda = 1 theta family (all t, sigma) that also fix z = 0.

    An independent route to :func:`configuration_stabilizer` for odd h.
    """
    out = []
    for l in range(F.h):
        for t in range(F.q):
            g = theta(F, 1, t, l)
            L = g.line(F, (0, 0, 1))
            if L[0] == 0 and L[1] == 0:
                out.append(g)
    return out
