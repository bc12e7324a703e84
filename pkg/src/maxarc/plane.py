"""The Desarguesian plane PG(2, q), q = 2^h.

Points and lines are triples normalised so the first nonzero coordinate is 1.
Inside set operations they are replaced by their rank in the canonical
(lexicographic) enumeration:

    (0,0,1) -> 0,  (0,1,c) -> 1 + c,  (1,b,c) -> 1 + q + b*q + c

Lines use the same ranking on [u,v,w], so a set of line indices is directly a
point set of the dual plane.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .field import Field

Triple = tuple[int, int, int]

INCIDENCE_TABLE_MAX_Q = 256


class Plane:
    def __init__(self, field: Field):
        self.field = field
        self.q = field.q
        self.size = self.q * self.q + self.q + 1

    def __repr__(self) -> str:
        return f"Plane(PG(2,{self.q}))"

    # -- normalisation and ranking -------------------------------------------------

    def normalize(self, p: Iterable[int]) -> Triple:
        a, b, c = p
        F = self.field
        if a:
            i = F.inv(a)
            return (1, F.mul(b, i), F.mul(c, i))
        if b:
            return (0, 1, F.mul(c, F.inv(b)))
        if c:
            return (0, 0, 1)
        raise ValueError("(0,0,0) is not a projective point")

    def index(self, p: Iterable[int]) -> int:
        a, b, c = self.normalize(p)
        if a:
            return 1 + self.q + b * self.q + c
        if b:
            return 1 + c
        return 0

    def coords(self, i: int) -> Triple:
        q = self.q
        if i == 0:
            return (0, 0, 1)
        if i <= q:
            return (0, 1, i - 1)
        if i < self.size:
            j = i - 1 - q
            return (1, j // q, j % q)
        raise IndexError(i)

    def enumerate_points(self) -> Iterator[Triple]:
        return (self.coords(i) for i in range(self.size))

    enumerate_lines = enumerate_points

    # -- incidence ---------------------------------------------------------------

    def incident(self, p: Iterable[int], line: Iterable[int]) -> bool:
        F = self.field
        (a, b, c), (u, v, w) = p, line
        return (F.mul(a, u) ^ F.mul(b, v) ^ F.mul(c, w)) == 0

    def _kernel_pair(self, line: Triple) -> tuple[Triple, Triple]:
        u, v, w = line
        if u:
            return (v, u, 0), (w, 0, u)
        return (1, 0, 0), (0, w, v)

    def points_on_line(self, line: Iterable[int]) -> list[int]:
        """Indices of the q+1 points on ``line``, ascending."""
        line = tuple(line)
        if self.q <= INCIDENCE_TABLE_MAX_Q:
            return sorted(self.incidence_table[self.index(line)].tolist())
        P, Q = self._kernel_pair(line)
        F = self.field
        out = {self.index(Q)}
        for t in range(self.q):
            out.add(self.index(tuple(x ^ F.mul(t, y) for x, y in zip(P, Q))))
        return sorted(out)

    lines_through_point = points_on_line

    def line_through(self, p: Iterable[int], r: Iterable[int]) -> Triple:
        return self.normalize(self.cross(p, r))

    def meet(self, l1: Iterable[int], l2: Iterable[int]) -> Triple:
        return self.normalize(self.cross(l1, l2))

    def cross(self, p: Iterable[int], r: Iterable[int]) -> Triple:
        F = self.field
        (a, b, c), (d, e, f) = p, r
        return (
            F.mul(b, f) ^ F.mul(c, e),
            F.mul(c, d) ^ F.mul(a, f),
            F.mul(a, e) ^ F.mul(b, d),
        )

    # -- vectorised tables ---------------------------------------------------------

    @cached_property
    def coordinate_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        q = self.q
        idx = np.arange(self.size, dtype=np.int64)
        X = np.where(idx > q, 1, 0)
        j = idx - 1 - q
        Y = np.where(idx > q, j // q, np.where(idx > 0, 1, 0))
        Z = np.where(idx > q, j % q, np.where(idx > 0, idx - 1, 1))
        return X.astype(np.int64), Y.astype(np.int64), Z.astype(np.int64)

    def index_array(self, X: np.ndarray, Y: np.ndarray, Z: np.ndarray) -> np.ndarray:
        F = self.field
        inv = F.np_inv
        ix = inv[X]
        iy = inv[Y]
        q = self.q
        with_x = 1 + q + F.vmul(Y, ix) * q + F.vmul(Z, ix)
        with_y = 1 + F.vmul(Z, iy)
        return np.where(X != 0, with_x, np.where(Y != 0, with_y, 0))

    @cached_property
    def incidence_table(self) -> np.ndarray:
        """Row i lists the q+1 point indices on line i (equivalently, lines through point i)."""
        F = self.field
        U, V, W = self.coordinate_arrays
        zero = np.zeros_like(U)
        one = np.ones_like(U)
        has_u = U != 0
        P = (np.where(has_u, V, one), np.where(has_u, U, zero), zero)
        Q = (np.where(has_u, W, zero), np.where(has_u, zero, W), np.where(has_u, U, V))
        t = np.arange(self.q, dtype=np.int64)[None, :]
        cols = [
            self.index_array(*(p[:, None] ^ F.vmul(t, qq[:, None]) for p, qq in zip(P, Q)))
        ]
        cols.append(self.index_array(*Q)[:, None])
        return np.concatenate(cols, axis=1)

    def line_counts(self, points: Iterable[int]) -> np.ndarray:
        """For every line, the number of given points on it."""
        pts = np.fromiter(points, dtype=np.int64)
        if self.q <= INCIDENCE_TABLE_MAX_Q:
            lines = self.incidence_table[pts].ravel()
        else:
            lines = np.array(
                [l for p in pts.tolist() for l in self.lines_through_point(self.coords(p))],
                dtype=np.int64,
            )
        return np.bincount(lines, minlength=self.size)
