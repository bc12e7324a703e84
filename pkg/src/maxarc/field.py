"""Arithmetic in GF(2^h) over a polynomial basis.

Elements are plain ints: bit i is the coefficient of x^i.  A :class:`Field`
carries the modulus, a distinguished primitive element and (for h <= 20)
exp/log tables relative to that element, so ``dlog`` and text output in
``w^k`` form line up with whichever generator the field was built with.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

# Primitive polynomials (x is a generator), bit i = coefficient of x^i.
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
    17: 0b100000000000001001,
    18: 0b1000000000010000001,
    19: 0b10000000000000100111,
    20: 0b100000000000000001001,
    21: 0b1000000000000000000101,
    22: 0b10000000000000000000011,
    23: 0b100000000000000000100001,
    24: 0b1000000000000000010000111,
}

TABLE_MAX_H = 20


class FieldError(ValueError):
    """Raised for invalid field parameters or undefined operations."""


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def polymod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def polymulmod(a: int, b: int, m: int) -> int:
    return polymod(clmul(a, b), m)


def _polypowmod(a: int, e: int, m: int) -> int:
    r = 1
    a = polymod(a, m)
    while e:
        if e & 1:
            r = polymulmod(r, a, m)
        a = polymulmod(a, a, m)
        e >>= 1
    return r


def _polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, polymod(a, b)
    return a


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(m: int) -> bool:
    """Rabin's irreducibility test for a binary polynomial."""
    h = m.bit_length() - 1
    if h < 1:
        return False
    # x^(2^h) == x mod m, and gcd(x^(2^(h/p)) - x, m) == 1 for primes p | h
    if _polypowmod(2, 1 << h, m) != polymod(2, m):
        return False
    for p in prime_factors(h):
        t = _polypowmod(2, 1 << (h // p), m) ^ polymod(2, m)
        if _polygcd(m, t) != 1:
            return False
    return True


def parse_polynomial(text: str, var: str = "x") -> int:
    """Parse ``"x^5+x^2+1"`` (or hex ``"0x25"``) into a bit vector."""
    text = text.replace(" ", "")
    if text.lower().startswith("0x"):
        return int(text, 16)
    bits = 0
    for term in text.split("+"):
        if term == "1":
            bits ^= 1
        elif term == "0":
            continue
        elif term == var:
            bits ^= 2
        elif re.fullmatch(rf"{re.escape(var)}\^\d+", term):
            bits ^= 1 << int(term.split("^")[1])
        else:
            raise FieldError(f"cannot parse polynomial term {term!r}")
    return bits


def parse_relation(text: str, var: str = "w") -> int:
    """Parse ``"w^18+w=1"`` into the polynomial lhs + rhs (as bits)."""
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        return parse_polynomial(lhs, var) ^ parse_polynomial(rhs, var)
    return parse_polynomial(text, var)


@dataclass(frozen=True)
class FieldSpec:
    h: int
    irreducible: int
    generator: int | None = None

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "irreducible_bits_hex": hex(self.irreducible),
            "generator_bits_hex": None if self.generator is None else hex(self.generator),
        }

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        g = d.get("generator_bits_hex")
        return cls(int(d["h"]), int(d["irreducible_bits_hex"], 16), None if g is None else int(g, 16))


class Field:
    """GF(2^h) with a fixed modulus and primitive element.

    ``generator`` defaults to the smallest primitive element.  All scalar
    operations take and return ints in ``range(q)``.
    """

    def __init__(self, h: int, irreducible: int | None = None, generator: int | None = None):
        if h < 1:
            raise FieldError("extension degree must be positive")
        if irreducible is None:
            irreducible = DEFAULT_MODULI.get(h)
            if irreducible is None:
                raise FieldError(f"no default modulus for h={h}; pass one explicitly")
        if irreducible.bit_length() - 1 != h or not is_irreducible(irreducible):
            raise FieldError(f"{irreducible:#x} is not an irreducible polynomial of degree {h}")
        self.h = h
        self.q = 1 << h
        self.order = self.q - 1
        self.modulus = irreducible
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if generator is None:
            generator = next(g for g in range(1, self.q) if self._is_primitive_slow(g))
        elif not (0 < generator < self.q) or not self._is_primitive_slow(generator):
            raise FieldError(f"{generator:#x} is not a primitive element")
        self.generator = generator
        if h <= TABLE_MAX_H:
            self._build_tables()
        self._sqrt_exp = 1 << (h - 1)

    # -- construction helpers -------------------------------------------------

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(self.h, self.modulus, self.generator)

    @classmethod
    def from_spec(cls, spec: FieldSpec) -> "Field":
        return cls(spec.h, spec.irreducible, spec.generator)

    def _is_primitive_slow(self, g: int) -> bool:
        if g == 0:
            return False
        if self.order == 1:
            return g == 1
        return all(
            _polypowmod(g, self.order // p, self.modulus) != 1 for p in prime_factors(self.order)
        )

    def _build_tables(self) -> None:
        n = self.order
        exp = [0] * (2 * n + 1)
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = polymulmod(x, self.generator, self.modulus)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    def __repr__(self) -> str:
        return f"Field(h={self.h}, irreducible={self.modulus:#x}, generator={self.generator:#x})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[x] + self._log[y]]
        return polymulmod(x, y, self.modulus)

    def square(self, x: int) -> int:
        return self.mul(x, x)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^h)")
        if self._log is not None:
            return self._exp[(self.order - self._log[x]) % self.order]
        return self.pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(x), -n)
        if x == 0:
            return 1 if n == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[x] * n) % self.order]
        r = 1
        while n:
            if n & 1:
                r = polymulmod(r, x, self.modulus)
            x = polymulmod(x, x, self.modulus)
            n >>= 1
        return r

    def sqrt(self, x: int) -> int:
        # squaring is a bijection in characteristic 2
        if x == 0 or self._log is None:
            return self.pow(x, self._sqrt_exp)
        lg = self._log[x]
        return self._exp[lg // 2 if lg % 2 == 0 else (lg + self.order) // 2]

    def frobenius(self, x: int, l: int) -> int:
        """x -> x^(2^l), with l taken mod h."""
        l %= self.h
        for _ in range(l):
            x = self.mul(x, x)
        return x

    def trace(self, x: int) -> int:
        t = 0
        y = x
        for _ in range(self.h):
            t ^= y
            y = self.mul(y, y)
        return t  # always 0 or 1

    @cached_property
    def trace_of_basis(self) -> int:
        """Bit mask m with Tr(x) = parity(x & m); the trace is GF(2)-linear."""
        return sum(self.trace(1 << i) << i for i in range(self.h))

    def trace_fast(self, x: int) -> int:
        return (x & self.trace_of_basis).bit_count() & 1

    def multiplicative_order(self, x: int) -> int:
        if x == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.order
        for p in prime_factors(self.order):
            while n % p == 0 and self.pow(x, n // p) == 1:
                n //= p
        return n

    def is_primitive(self, x: int) -> bool:
        return x != 0 and self.multiplicative_order(x) == self.order

    def dlog(self, x: int) -> int:
        if x == 0:
            raise FieldError("discrete log of zero")
        if self._log is not None:
            return self._log[x]
        # baby-step giant-step for the table-less range
        m = int(self.order**0.5) + 1
        baby = {}
        y = 1
        for j in range(m):
            baby.setdefault(y, j)
            y = self.mul(y, self.generator)
        step = self.pow(self.generator, -m)
        y = x
        for i in range(m + 1):
            if y in baby:
                return (i * m + baby[y]) % self.order
            y = self.mul(y, step)
        raise FieldError("discrete log failed")

    def gen_pow(self, k: int) -> int:
        """generator^k."""
        if self._exp is not None:
            return self._exp[k % self.order]
        return self.pow(self.generator, k)

    # -- quadratic equations ---------------------------------------------------

    @cached_property
    def _artin_schreier(self) -> dict[int, int]:
        # c -> smallest u with u^2 + u = c (defined iff Tr(c) = 0)
        table: dict[int, int] = {}
        for u in range(self.q):
            table.setdefault(self.mul(u, u) ^ u, u)
        return table

    def solve_artin_schreier(self, c: int) -> int | None:
        """A root of u^2 + u = c, or None when Tr(c) = 1."""
        return self._artin_schreier.get(c)

    def quadratic_roots(self, a: int, b: int, c: int) -> list[int]:
        """Roots of a x^2 + b x + c = 0."""
        if a == 0:
            if b == 0:
                if c == 0:
                    raise FieldError("degenerate quadratic 0 = 0")
                return []
            return [self.div(c, b)]
        if b == 0:
            return [self.sqrt(self.div(c, a))]
        # x = (b/a) u  =>  u^2 + u = a c / b^2
        ba = self.div(b, a)
        u = self.solve_artin_schreier(self.div(self.mul(a, c), self.mul(b, b)))
        if u is None:
            return []
        return sorted({self.mul(ba, u), self.mul(ba, u ^ 1)})

    # -- vectorised helpers (numpy) ---------------------------------------------

    @cached_property
    def np_log(self) -> np.ndarray:
        if self._log is None:
            raise FieldError("vectorised arithmetic requires tables (h <= 20)")
        lg = np.array(self._log, dtype=np.int64)
        lg[0] = 2 * self.order  # sentinel: any sum involving it lands in the zero tail
        return lg

    @cached_property
    def np_exp(self) -> np.ndarray:
        n = self.order
        e = np.zeros(4 * n + 1, dtype=np.int64)
        e[: 2 * n] = np.array(self._exp[: 2 * n], dtype=np.int64)
        return e

    def vmul(self, a, b) -> np.ndarray:
        return self.np_exp[self.np_log[a] + self.np_log[b]]

    @cached_property
    def np_inv(self) -> np.ndarray:
        out = np.zeros(self.q, dtype=np.int64)
        for x in range(1, self.q):
            out[x] = self.inv(x)
        return out

    @cached_property
    def np_trace(self) -> np.ndarray:
        return np.array([self.trace(x) for x in range(self.q)], dtype=np.int64)

    # -- text forms ------------------------------------------------------------

    def fmt(self, x: int) -> str:
        """``"0"`` or ``"w^k"`` with respect to the field's generator."""
        if x == 0:
            return "0"
        k = self.dlog(x)
        return "1" if k == 0 else ("w" if k == 1 else f"w^{k}")

    def parse(self, text: str) -> int:
        """Parse an element: ``0``, ``1``, ``w``, ``w^k``, sums like ``w+1``, or hex ``0x..``."""
        text = text.strip().replace(" ", "")
        if text.lower().startswith("0x"):
            v = int(text, 16)
            if v >= self.q:
                raise FieldError(f"{text} does not fit in {self.h} bits")
            return v
        total = 0
        for term in text.split("+"):
            if term == "0":
                continue
            if term == "1":
                total ^= 1
            elif term == "w":
                total ^= self.generator
            elif re.fullmatch(r"w\^-?\d+", term):
                total ^= self.gen_pow(int(term[2:]))
            else:
                raise FieldError(f"cannot parse field element {text!r}")
        return total

    def eval_poly(self, poly: int, x: int) -> int:
        """Evaluate a GF(2)[X] polynomial (bit vector) at x."""
        r = 0
        p = 1
        i = 0
        while poly >> i:
            if (poly >> i) & 1:
                r ^= p
            p = self.mul(p, x)
            i += 1
        return r

    def span(self, gens: Iterable[int]) -> list[int]:
        """GF(2)-span of the given elements, sorted."""
        out = {0}
        for g in gens:
            out |= {x ^ g for x in out}
        return sorted(out)


def find_generator_with_relation(field: Field, relation: int) -> int:
    """Smallest primitive element that is a root of ``relation`` (a GF(2)[X] bit vector).

    Raises FieldError when no primitive root exists in this field.
    """
    for x in range(1, field.q):
        if field.eval_poly(relation, x) == 0 and field.is_primitive(x):
            return x
    raise FieldError("no primitive element satisfies the relation")


def field_with_relation(h: int, relation: str | int, irreducible: int | None = None) -> Field:
    """A field whose generator is the smallest primitive root of ``relation``."""
    rel = parse_relation(relation) if isinstance(relation, str) else relation
    base = Field(h, irreducible)
    return Field(h, base.modulus, find_generator_with_relation(base, rel))


PG32_RELATION = "w^18+w=1"


def pg32_field() -> Field:
    """GF(32) with w primitive and w^18 + w = 1."""
    return field_with_relation(5, PG32_RELATION)


def gf2_solve_kernel(rows: Sequence[int], n: int) -> list[int]:
    """Basis of {t : parity(row & t) = 0 for every row} in GF(2)^n."""
    pivots: list[tuple[int, int]] = []
    for r in rows:
        for col, pr in pivots:
            if (r >> col) & 1:
                r ^= pr
        if r:
            col = r.bit_length() - 1
            pivots = [(c, p ^ r if (p >> col) & 1 else p) for c, p in pivots]
            pivots.append((col, r))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        v = 1 << free
        for col, pr in pivots:
            if (pr >> free) & 1:
                v |= 1 << col
        basis.append(v)
    return basis
