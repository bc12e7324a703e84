from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxarc.field import (
    Field,
    FieldError,
    FieldSpec,
    clmul,
    field_with_relation,
    find_generator_with_relation,
    gf2_solve_kernel,
    is_irreducible,
    parse_polynomial,
    parse_relation,
    pg32_field,
)

elements32 = st.integers(0, 31)
nonzero32 = st.integers(1, 31)
F = pg32_field()


def test_relation_holds_for_generator():
    w = F.generator
    assert F.gen_pow(18) ^ w == 1
    assert F.multiplicative_order(w) == 31
    assert F.parse("w+1") == F.parse("w^18")


def test_relation_generator_is_unique_up_to_frobenius():
    G = Field(5)
    rel = parse_relation("w^18+w=1")
    roots = [g for g in range(1, 32) if G.is_primitive(g) and G.eval_poly(rel, g) == 0]
    assert len(roots) == 5
    g0 = roots[0]
    assert sorted(G.frobenius(g0, l) for l in range(5)) == sorted(roots)
    assert find_generator_with_relation(G, rel) in roots


@pytest.mark.parametrize("h", range(1, 11))
def test_default_fields_build(h):
    G = Field(h)
    assert G.q == 2**h
    assert G.multiplicative_order(G.generator) == G.q - 1
    assert is_irreducible(G.modulus)


def test_rejects_reducible_modulus():
    with pytest.raises(FieldError):
        Field(4, 0b10101)
    with pytest.raises(FieldError):
        Field(5, 0b100101, generator=1)


@given(elements32, elements32, elements32)
def test_ring_axioms(a, b, c):
    m = F.mul
    assert m(a, b) == m(b, a)
    assert m(a, m(b, c)) == m(m(a, b), c)
    assert m(a, b ^ c) == m(a, b) ^ m(a, c)


@given(nonzero32)
def test_inverse_and_division(a):
    assert F.mul(a, F.inv(a)) == 1
    assert F.div(a, a) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(elements32, elements32)
def test_multiplication_matches_carryless_reduction(a, b):
    from maxarc.field import polymulmod

    assert F.mul(a, b) == polymulmod(a, b, F.modulus)
    assert clmul(a, b) == clmul(b, a)


@given(elements32)
def test_sqrt_and_frobenius(a):
    assert F.square(F.sqrt(a)) == a
    assert F.frobenius(a, 5) == a
    assert F.frobenius(F.frobenius(a, 2), 3) == a


@given(elements32, elements32)
def test_trace_is_linear_and_binary(a, b):
    assert F.trace(a) in (0, 1)
    assert F.trace(a ^ b) == F.trace(a) ^ F.trace(b)
    assert F.trace(F.square(a)) == F.trace(a)


def test_trace_of_one_and_balance():
    for h in (3, 4, 5, 6, 7):
        G = Field(h)
        assert G.trace(1) == h % 2
        assert sum(G.trace(x) for x in G.elements()) == G.q // 2


@given(nonzero32)
def test_dlog_inverts_power(a):
    assert F.gen_pow(F.dlog(a)) == a


@given(elements32, st.integers(-40, 40))
def test_pow(a, n):
    if a == 0 and n < 0:
        return
    ref = 1
    base = a if n >= 0 else F.inv(a)
    for _ in range(abs(n)):
        ref = F.mul(ref, base)
    assert F.pow(a, n) == ref


@given(elements32)
def test_fmt_parse_roundtrip(a):
    assert F.parse(F.fmt(a)) == a


@pytest.mark.parametrize("text, expected", [("0", 0), ("1", 1), ("w", 2), ("w^0", 1), ("0x1f", 31), ("w^31", 1)])
def test_parse_forms(text, expected):
    assert F.parse(text) == expected


def test_parse_sums():
    assert F.parse("w^18 + w") == 1


@given(elements32)
def test_artin_schreier(c):
    u = F.solve_artin_schreier(c)
    if F.trace(c):
        assert u is None
    else:
        assert F.square(u) ^ u == c


@given(nonzero32, elements32, elements32)
def test_quadratic_roots_brute_force(a, b, c):
    roots = F.quadratic_roots(a, b, c)
    brute = [x for x in range(32) if F.mul(a, F.square(x)) ^ F.mul(b, x) ^ c == 0]
    assert roots == brute


def test_vectorised_matches_scalar():
    import numpy as np

    rng = np.random.default_rng(0)
    a = rng.integers(0, 32, 500)
    b = rng.integers(0, 32, 500)
    assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert F.np_trace.tolist() == [F.trace(x) for x in range(32)]


def test_span():
    s = F.span([1, F.generator])
    assert sorted(s) == sorted({0, 1, 2, 3})
    assert len(F.span([1, 2, 3])) == 4


def test_spec_roundtrip():
    spec = F.spec
    assert FieldSpec.from_json(spec.to_json()) == spec
    assert Field.from_spec(spec) == F


def test_field_with_relation_default():
    G = field_with_relation(5, "w^18+w=1")
    assert G == F
    H = field_with_relation(5, "w^18+w=1", irreducible=parse_polynomial("x^5+x^3+1"))
    assert H.gen_pow(18) ^ H.generator == 1


def test_relation_without_primitive_root():
    with pytest.raises(FieldError):
        field_with_relation(5, "w^2+w=1")


def test_gf2_kernel_random():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randrange(1, 12)
        rows = [rng.randrange(1 << n) for _ in range(rng.randrange(0, n + 2))]
        basis = gf2_solve_kernel(rows, n)
        for v in basis:
            assert all(bin(r & v).count("1") % 2 == 0 for r in rows)
        brute = sum(all(bin(r & v).count("1") % 2 == 0 for r in rows) for v in range(1 << n))
        assert 1 << len(basis) == brute
