"""Conics on the nucleus (0,0,1), Mathon's composition, and pencils.

A :class:`Conic` is the triple (alpha, beta, lam) of

    alpha x^2 + x y + beta y^2 + lam z^2 = 0.

Every non-degenerate conic whose nucleus is (0,0,1) has a nonzero xy
coefficient, so dividing by it gives a unique triple.  Tr(alpha*beta) = 1
holds exactly when the line z = 0 is external to the conic; that is the
admissible family used by the Mathon construction, but triples are allowed in
any frame with the right nucleus because the composition below does not depend
on which external line plays the role of z = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .field import Field, FieldError
from .plane import Plane, Triple


class ConicError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Conic:
    alpha: int
    beta: int
    lam: int

    def __post_init__(self):
        if self.lam == 0:
            raise ConicError("lambda = 0 is the nucleus, not a conic")

    def form(self) -> "GeneralConic":
        return GeneralConic(self.alpha, self.beta, self.lam, 1, 0, 0)

    def fmt(self, F: Field) -> str:
        return f"alpha={F.fmt(self.alpha)} beta={F.fmt(self.beta)} lambda={F.fmt(self.lam)}"

    def equation(self, F: Field) -> str:
        def coef(c: int, mono: str) -> str:
            return mono if c == 1 else f"{F.fmt(c)}{mono}"

        terms = [coef(self.alpha, "x^2") if self.alpha else None, "xy",
                 coef(self.beta, "y^2") if self.beta else None, coef(self.lam, "z^2")]
        return "+".join(t for t in terms if t) + "=0"

    def to_json(self, F: Field) -> list[str]:
        return [F.fmt(self.alpha), F.fmt(self.beta), F.fmt(self.lam)]

    @classmethod
    def from_json(cls, F: Field, d: Sequence[str]) -> "Conic":
        return cls(*(F.parse(x) for x in d))


@dataclass(frozen=True)
class GeneralConic:
    """a x^2 + b y^2 + c z^2 + d xy + e yz + f xz = 0."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        if not any(self.coeffs):
            raise ConicError("all coefficients zero")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def evaluate(self, F: Field, p: Iterable[int]) -> int:
        x, y, z = p
        m = F.mul
        return (m(self.a, m(x, x)) ^ m(self.b, m(y, y)) ^ m(self.c, m(z, z))
                ^ m(self.d, m(x, y)) ^ m(self.e, m(y, z)) ^ m(self.f, m(x, z)))

    def nucleus(self) -> Triple:
        # common zero of the partial derivatives (d y + f z, d x + e z, e y + f x)
        return (self.e, self.f, self.d)

    def scaled(self, F: Field, s: int) -> "GeneralConic":
        return GeneralConic(*(F.mul(s, c) for c in self.coeffs))

    def normalized(self, F: Field) -> "GeneralConic":
        """Scale so the first nonzero coefficient is 1 (equal conics, equal forms)."""
        lead = next(c for c in self.coeffs if c)
        return self.scaled(F, F.inv(lead))

    def to_conic(self, F: Field) -> Conic:
        if self.e or self.f:
            raise ConicError("nucleus is not (0,0,1)")
        if self.d == 0:
            raise ConicError("xy coefficient is zero; form is a double line")
        i = F.inv(self.d)
        return Conic(F.mul(self.a, i), F.mul(self.b, i), F.mul(self.c, i))

    def is_double_line(self) -> bool:
        return self.d == 0 and self.e == 0 and self.f == 0

    def double_line(self, F: Field) -> Triple:
        if not self.is_double_line():
            raise ConicError("not the square of a linear form")
        return (F.sqrt(self.a), F.sqrt(self.b), F.sqrt(self.c))

    def points(self, plane: Plane) -> frozenset[int]:
        F = plane.field
        a, b, c, d, e, f = self.coeffs
        m = F.mul
        out = set()
        # affine part z = 1:  a x^2 + (d y + f) x + (b y^2 + e y + c) = 0
        for y in range(F.q):
            A, B, C = a, m(d, y) ^ f, m(b, m(y, y)) ^ m(e, y) ^ c
            if A == 0 and B == 0:
                if C == 0:
                    out.update(plane.index((x, y, 1)) for x in range(F.q))
                continue
            for x in F.quadratic_roots(A, B, C):
                out.add(plane.index((x, y, 1)))
        # line z = 0:  a x^2 + d x y + b y^2
        for y in range(F.q):
            if (a ^ m(d, y) ^ m(b, m(y, y))) == 0:
                out.add(plane.index((1, y, 0)))
        if b == 0:
            out.add(plane.index((0, 1, 0)))
        return frozenset(out)


@lru_cache(maxsize=8192)
def conic_points(plane: Plane, C: Conic | GeneralConic) -> frozenset[int]:
    form = C.form() if isinstance(C, Conic) else C
    return form.points(plane)


def is_admissible(F: Field, C: Conic) -> bool:
    """Tr(alpha*beta) = 1, i.e. z = 0 is external to C."""
    return F.trace(F.mul(C.alpha, C.beta)) == 1


def compose(F: Field, C: Conic, D: Conic) -> Conic:
    """Mathon's composition: lambda-weighted averages of alpha and beta."""
    s = C.lam ^ D.lam
    if s == 0:
        raise ConicError("composition undefined for equal lambda")
    si = F.inv(s)
    m = F.mul
    return Conic(
        m(m(C.alpha, C.lam) ^ m(D.alpha, D.lam), si),
        m(m(C.beta, C.lam) ^ m(D.beta, D.lam), si),
        s,
    )


def trace_disjoint(F: Field, C: Conic, D: Conic) -> bool:
    E = compose(F, C, D)
    return F.trace(F.mul(E.alpha, E.beta)) == 1


def trace_disjoint_many(F: Field, C: Sequence[np.ndarray], D: Sequence[np.ndarray]) -> np.ndarray:
    """Vectorised :func:`trace_disjoint` over (alpha, beta, lam) arrays; lambdas must differ."""
    (a1, b1, l1), (a2, b2, l2) = (np.asarray(x) for x in C), (np.asarray(x) for x in D)
    s = l1 ^ l2
    if (s == 0).any():
        raise ConicError("composition undefined for equal lambda")
    si = F.np_inv[s]
    alpha = F.vmul(F.vmul(a1, l1) ^ F.vmul(a2, l2), si)
    beta = F.vmul(F.vmul(b1, l1) ^ F.vmul(b2, l2), si)
    return F.np_trace[F.vmul(alpha, beta)] == 1


def pencil_double_line(F: Field, C: GeneralConic, D: GeneralConic) -> Triple:
    """The line L with Q_C + c Q_D = L^2 for some c: the degenerate member of the pencil.

    In characteristic 2 this is the combination killing every cross term.
    """
    c = None
    for x, y in ((C.d, D.d), (C.e, D.e), (C.f, D.f)):
        if y:
            c = F.div(x, y)
            break
    if c is None:
        raise ConicError("second form has no cross terms")
    combo = [x ^ F.mul(c, y) for x, y in zip(C.coeffs, D.coeffs)]
    if any(combo[3:]):
        raise ConicError("conics do not share a nucleus")
    if not any(combo[:3]):
        raise ConicError("conics coincide")
    return (F.sqrt(combo[0]), F.sqrt(combo[1]), F.sqrt(combo[2]))


def infinity_line(F: Field, C: Conic | GeneralConic, D: Conic | GeneralConic) -> Triple:
    """Line at infinity of the pencil spanned by two conics on a common nucleus."""
    fc = C.form() if isinstance(C, Conic) else C
    fd = D.form() if isinstance(D, Conic) else D
    u = pencil_double_line(F, fc, fd)
    lead = next(x for x in u if x)
    i = F.inv(lead)
    return tuple(F.mul(x, i) for x in u)


@dataclass(frozen=True)
class Pencil:
    """{F_{alpha,beta,lam} : lam != 0} with nucleus (0,0,1) and line at infinity z = 0."""

    alpha: int
    beta: int

    def conic(self, lam: int) -> Conic:
        return Conic(self.alpha, self.beta, lam)

    def conics(self, F: Field) -> list[Conic]:
        return [self.conic(lam) for lam in range(1, F.q)]

    def contains(self, C: Conic) -> bool:
        return (C.alpha, C.beta) == (self.alpha, self.beta)


def pencil_of(F: Field, C: Conic) -> Pencil:
    if not is_admissible(F, C):
        raise ConicError("z = 0 is not external to the conic")
    return Pencil(C.alpha, C.beta)


def standard_alpha(F: Field) -> int:
    """alpha used for the standard pencil: 1 for odd h, else the smallest trace-1 element."""
    return next(a for a in range(1, F.q) if F.trace(a) == 1)


def standard_pencil(F: Field, alpha: int | None = None) -> Pencil:
    if alpha is None:
        alpha = standard_alpha(F)
    if F.trace(alpha) != 1:
        raise ConicError("standard pencil needs Tr(alpha) = 1")
    return Pencil(alpha, 1)
