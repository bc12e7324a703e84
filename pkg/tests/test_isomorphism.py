from __future__ import annotations

import random

import pytest

from maxarc.arcs import denniston_arc, mathon_arc, mathon_exponent_conics, span_subgroup
from maxarc.collineation import random_collineation
from maxarc.field import Field
from maxarc.isomorphism import (
    IsomorphismError,
    are_isomorphic,
    automorphism_order,
    canonical_form,
    denniston_automorphisms_by_similitude,
    denniston_position,
    field_group_orbits,
    g_a_order,
    g_a_stabilizer,
    lambda_set_key,
    mathon_automorphisms,
    mathon_candidates,
    pencil_4arc_count,
)
from maxarc.plane import Plane

EXPONENTS = [(12, 15, 4), (5, 25, 14), (6, 19, 8)]


@pytest.fixture(scope="module")
def exponent_arcs(F32, P32):
    span = [F32.parse(x) for x in ("1", "w", "w^9")]
    return [mathon_arc(P32, mathon_exponent_conics(F32, *klm, span)) for klm in EXPONENTS]


def test_exponent_arcs_pairwise_distinct(exponent_arcs):
    forms = [canonical_form(K) for K in exponent_arcs]
    assert len(set(forms)) == 3
    assert not are_isomorphic(exponent_arcs[0], exponent_arcs[1])


def test_canonical_form_invariant(F32, exponent_arcs):
    rng = random.Random(17)
    for K in exponent_arcs:
        cf = canonical_form(K)
        for _ in range(3):
            g = random_collineation(F32, rng)
            assert canonical_form(K.transformed(g)) == cf


def test_candidate_count(exponent_arcs):
    # 7 subarcs x 3 conics x 5 Frobenius twists
    assert len(mathon_candidates(exponent_arcs[0])) == 7 * 3 * 5


def test_mathon_automorphisms_fix_arc(F32, P32, exponent_arcs):
    for K in exponent_arcs:
        auts = mathon_automorphisms(K)
        assert len(auts) == automorphism_order(K) == 2
        for g in auts:
            assert g.point_set(P32, K.points) == K.points


def test_denniston_arcs_all_isomorphic(F32, P32):
    rng = random.Random(5)
    subgroups = [span_subgroup([1, 2]), span_subgroup([5, 17]), span_subgroup([7, 30])]
    arcs = [denniston_arc(P32, 1, A) for A in subgroups]
    arcs.append(arcs[0].transformed(random_collineation(F32, rng)))
    assert all(are_isomorphic(arcs[0], K) for K in arcs[1:])


def test_denniston_position_recovers_lambdas(F32, P32):
    A = span_subgroup([3, 9])
    K = denniston_arc(P32, 1, A)
    g = random_collineation(F32, random.Random(9))
    pos = denniston_position(K.transformed(g))
    assert lambda_set_key(F32, pos.lams) == lambda_set_key(F32, A.nonzero)


def test_denniston_automorphism_order(F32, P32, base32):
    K = denniston_arc(P32, 1, [0, *base32])
    assert automorphism_order(K) == 66
    assert denniston_automorphisms_by_similitude(K) == 66


def test_g_a(F32, base32):
    assert g_a_stabilizer(F32, base32) == [(1, 0)]
    ga = g_a_order(F32, base32)
    assert (ga.field_maps, ga.with_doubling) == (1, 2)


def test_g_a_at_128():
    F = Field(7)
    A = [1, 2, 3]
    assert g_a_order(F, A).with_doubling == 2


def test_different_planes_rejected(P32, base32):
    K = denniston_arc(P32, 1, [0, *base32])
    other = denniston_arc(Plane(Field(3)), 1, [0, 1])
    with pytest.raises(IsomorphismError):
        are_isomorphic(K, other)


def test_different_degrees_not_isomorphic(P32, base32, exponent_arcs):
    K = denniston_arc(P32, 1, [0, *base32])
    assert not are_isomorphic(K, exponent_arcs[0])


def test_unsupported_degree(P32, base32, F32):
    from maxarc.arcs import Arc

    bogus = Arc(P32, 4, (0, 0, 1), exponent_arcs_conics(F32), frozenset(), "x")
    with pytest.raises(IsomorphismError):
        canonical_form(bogus)


def exponent_arcs_conics(F32):
    span = [F32.parse(x) for x in ("1", "w", "w^9")]
    cs = mathon_exponent_conics(F32, 12, 15, 4, span)
    return (cs[0], cs[1], cs[3])


def test_orbits_at_32(F32):
    orb = field_group_orbits(F32)
    assert orb.n_orbits == 1 and orb.sizes == [155]
    assert pencil_4arc_count(F32) == 155
    assert len(orb.representatives()) == 1 and 1 in orb.representatives()[0]


@pytest.mark.parametrize("h, n", [(3, 1), (4, 2), (7, 3)])
def test_orbit_counts(h, n):
    F = Field(h)
    orb = field_group_orbits(F)
    assert orb.n_orbits == n
    assert sum(orb.sizes) == (F.q - 1) * (F.q - 2) // 6


def test_canonical_form_ignores_conic_order(P32, exponent_arcs):
    from maxarc.arcs import arc_from_conics

    rng = random.Random(0)
    for K in exponent_arcs:
        conics = list(K.conics)
        rng.shuffle(conics)
        assert canonical_form(arc_from_conics(P32, conics, "mathon")) == canonical_form(K)
