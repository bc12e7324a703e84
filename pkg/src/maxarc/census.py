"""t-value systems, conic censuses and isomorphism-class counts for 4- and 8-arcs.

Setting: q = 2^m with m odd, so the standard pencil is {F_{1,1,lam}} and
Tr(1) = 1.  A base 4-arc D = {C_1, C_k, C_{k+1}} is fixed.  For a
representative 4-arc R (a lambda-set containing 1) and a conic C_lam of R, the
maps theta(lam, t, sigma) send C_lam onto C_1 and fix (0,0,1) and (0,1,0).
For another conic C_m of R, the image of C_m misses C_j (j = k, k+1) exactly
when

    Tr(gamma_j t) = 0,  gamma_j = K_j s + sqrt(K_j),
    K_j = m^sigma (1 + j) / (s^2 m^sigma + j),  s = (lam^(-1/2))^sigma,

and a vanishing denominator means the images already meet on the line x = 0.
Both conditions are GF(2)-linear in t, so the solutions form a subspace found
by kernel intersection.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .arcs import Arc, arc_from_conics, extend_by_conic, infinity_data, verify_maximal_arc
from .collineation import theta
from .conic import Conic, conic_points, standard_alpha
from .field import Field, gf2_solve_kernel, prime_factors
from .isomorphism import (
    are_isomorphic,
    automorphism_order,
    canonical_form,
    field_group_orbits,
    pencil_4arc_count,
)
from .plane import Plane

Progress = Callable[[str], None] | None


class CensusError(ValueError):
    pass


class DegenerateTraceSystem(CensusError):
    """The chosen map forces the images to meet (a zero denominator)."""


def threads_from_env(default: int = 1) -> int:
    try:
        return max(1, int(os.environ.get("MAXARC_THREADS", default)))
    except ValueError:
        return default


def _require_odd(F: Field) -> None:
    if F.h % 2 == 0:
        raise CensusError("the census needs an odd extension degree (Tr(1) = 1)")


# -- trace systems --------------------------------------------------------------------


@dataclass(frozen=True)
class TraceSystem:
    lam: int  # conic of the representative mapped onto C_1
    tested: int  # conic of the representative whose image is tested
    sigma: int  # Frobenius exponent
    s: int
    targets: tuple[int, int]
    coeffs: tuple[int, int]  # gamma_j: condition Tr(gamma_j t) = 0

    def holds(self, F: Field, t: int) -> bool:
        return all(F.trace(F.mul(g, t)) == 0 for g in self.coeffs)

    def solve(self, F: Field) -> list[int]:
        rows = [sum(F.trace(F.mul(g, 1 << i)) << i for i in range(F.h)) for g in self.coeffs]
        return F.span(gf2_solve_kernel(rows, F.h))


def tested_conic(rep: Sequence[int], lam: int) -> int:
    rest = [x for x in rep if x != lam]
    return 1 if 1 in rest else min(rest)


def trace_system(F: Field, base: Sequence[int], rep: Sequence[int], lam: int, sigma: int) -> TraceSystem:
    _require_odd(F)
    if lam not in rep:
        raise CensusError("lam must be a conic of the representative")
    m = tested_conic(rep, lam)
    s = F.frobenius(F.inv(F.sqrt(lam)), sigma)
    ms = F.frobenius(m, sigma)
    targets = tuple(sorted(x for x in base if x != 1))
    coeffs = []
    for j in targets:
        den = F.mul(F.mul(s, s), ms) ^ j
        if den == 0:
            raise DegenerateTraceSystem(
                f"lam={F.fmt(lam)} sigma=2^{sigma % F.h}: image of C_{F.fmt(m)} meets C_{F.fmt(j)} on x = 0"
            )
        K = F.div(F.mul(ms, 1 ^ j), den)
        coeffs.append(F.mul(K, s) ^ F.sqrt(K))
    return TraceSystem(lam, m, sigma % F.h, s, targets, tuple(coeffs))


def solve_t_values(F: Field, base: Sequence[int], rep: Sequence[int], lam: int, sigma: int) -> list[int]:
    return trace_system(F, base, rep, lam, sigma).solve(F)


def t_values_by_points(plane: Plane, base: Sequence[int], rep: Sequence[int], lam: int, sigma: int) -> list[int]:
    """Brute-force oracle: t with every image conic of rep (other than C_1) missing C_j, j != 1."""
    F = plane.field
    targets = set()
    for j in base:
        if j != 1:
            targets |= conic_points(plane, Conic(1, 1, j))
    out = []
    for t in range(F.q):
        g = theta(F, lam, t, sigma)
        if all(not (g.point_set(plane, conic_points(plane, Conic(1, 1, m))) & targets)
               for m in rep if m != lam):
            out.append(t)
    return out


def fixed_conic_values_without_scale(F: Field, k: int, sigma: int) -> list[int]:
    """t with Tr[t(1+j)(1+t)/(j + k^sigma)] = 0 for j = k, k+1.

    This is the fixed-C_1 system with the factor k^sigma of the tested conic's
    equation left out; kept to document where the printed values come from.
    """
    ks = F.frobenius(k, sigma)
    out = []
    for t in range(F.q):
        ok = True
        for j in (k, k ^ 1):
            den = j ^ ks
            if den == 0:
                raise DegenerateTraceSystem("zero denominator")
            if F.trace(F.div(F.mul(F.mul(t, 1 ^ j), 1 ^ t), den)):
                ok = False
        if ok:
            out.append(t)
    return out


def pair_t_values(F: Field, system: TraceSystem, ts: Iterable[int]) -> list[tuple[int, int]]:
    """Match t with t + s: composing with the involution (x, y, z) -> (x, x + y, z) shifts t by s."""
    ts = set(ts)
    pairs = []
    for t in sorted(ts):
        u = t ^ system.s
        if u not in ts:
            raise CensusError(f"t={F.fmt(t)} has no partner")
        if t < u:
            pairs.append((t, u))
    return pairs


def image_conics(F: Field, rep: Sequence[int], lam: int, t: int, sigma: int) -> tuple[Conic, ...]:
    g = theta(F, lam, t, sigma)
    return tuple(sorted(g.conic(F, Conic(1, 1, m)) for m in rep if m != lam))


def pair_by_image(F: Field, rep: Sequence[int], lam: int, sigma: int, ts: Iterable[int]) -> list[tuple[int, ...]]:
    """Group t-values by the image of the representative 4-arc."""
    groups: dict[tuple, list[int]] = {}
    for t in sorted(ts):
        groups.setdefault(image_conics(F, rep, lam, t, sigma), []).append(t)
    return sorted(tuple(v) for v in groups.values())


# -- conic census ---------------------------------------------------------------------


@dataclass
class CensusCell:
    rep: tuple[int, ...]
    lam: int
    sigma: int
    t_values: list[int]
    pairs: list[tuple[int, int]]
    d_conics: list[Conic]
    m_conics: list[Conic]
    skipped: str = ""

    def to_json(self, F: Field) -> dict:
        fmt = F.fmt
        return {
            "representative": [fmt(x) for x in self.rep],
            "lambda": fmt(self.lam),
            "sigma": 1 << self.sigma,
            "t_values": [fmt(t) for t in self.t_values],
            "pairs": [[fmt(a), fmt(b)] for a, b in self.pairs],
            "d_conics": [c.to_json(F) for c in self.d_conics],
            "m_conics": [c.to_json(F) for c in self.m_conics],
            "skipped": self.skipped,
        }


@dataclass
class ConicCensus:
    base: tuple[int, ...]
    cells: list[CensusCell]

    @property
    def d_conics(self) -> list[Conic]:
        return [c for cell in self.cells for c in cell.d_conics]

    @property
    def m_conics(self) -> list[Conic]:
        return [c for cell in self.cells for c in cell.m_conics]

    def duplicates(self) -> list[Conic]:
        cnt = Counter(self.d_conics + self.m_conics)
        return sorted(c for c, n in cnt.items() if n > 1)

    def counts_by_lambda(self) -> dict[int, tuple[int, int]]:
        out: dict[int, list[int]] = {}
        for cell in self.cells:
            d, m = out.setdefault(cell.lam, [0, 0])
            out[cell.lam] = [d + len(cell.d_conics), m + len(cell.m_conics)]
        return {k: tuple(v) for k, v in out.items()}


def disjoint_conic_census(
    F: Field,
    base: Sequence[int],
    reps: Sequence[Sequence[int]] | None = None,
    plane: Plane | None = None,
    progress: Progress = None,
) -> ConicCensus:
    """Conics disjoint from the base 4-arc reached by the theta family, split by type.

    A conic is a D-conic when the image 4-arc lies in the standard pencil
    (pencil-parameter equality), an M-conic otherwise.  With ``plane`` given,
    disjointness from the base is re-checked on point sets.
    """
    _require_odd(F)
    base = tuple(sorted(base))
    reps = [tuple(sorted(r)) for r in (reps or [base])]
    cells = []
    base_pts = None
    if plane is not None:
        base_pts = set()
        for j in base:
            base_pts |= conic_points(plane, Conic(1, 1, j))
    for rep in reps:
        for lam in rep:
            for sigma in range(F.h):
                try:
                    system = trace_system(F, base, rep, lam, sigma)
                except DegenerateTraceSystem as e:
                    cells.append(CensusCell(rep, lam, sigma, [], [], [], [], str(e)))
                    continue
                ts = system.solve(F)
                pairs = pair_t_values(F, system, ts)
                dcs, mcs = [], []
                for t, u in pairs:
                    imgs = image_conics(F, rep, lam, t, sigma)
                    if imgs != image_conics(F, rep, lam, u, sigma):
                        raise CensusError("paired t-values give different 4-arcs")
                    if all((c.alpha, c.beta) == (1, 1) for c in imgs):
                        dcs.extend(imgs)
                    else:
                        mcs.extend(imgs)
                    if base_pts is not None:
                        for c in imgs:
                            if conic_points(plane, c) & base_pts:
                                raise CensusError(f"census conic {c.fmt(F)} meets the base arc")
                cells.append(CensusCell(rep, lam, sigma, ts, pairs, dcs, mcs))
                if progress:
                    progress(f"cell rep={','.join(F.fmt(x) for x in rep)} lambda={F.fmt(lam)} "
                             f"sigma={1 << sigma}: {len(ts)} t-values, {len(dcs)} D, {len(mcs)} M")
    return ConicCensus(base, cells)


# -- formulas --------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    return n > 1 and prime_factors(n) == [n]


def denniston4_class_formula(m: int) -> Fraction:
    """(2^(m-1) - 1) / (3m)."""
    return Fraction(2 ** (m - 1) - 1, 3 * m)


def pencil_4arc_formula(m: int) -> int:
    q = 2**m
    return (q - 1) * (q - 2) // 6


def mathon8_class_formula(m: int) -> Fraction:
    """N/14 (2^(m-3) - 1)(3mN - 1) with N the Denniston class count."""
    N = denniston4_class_formula(m)
    return N / 14 * (2 ** (m - 3) - 1) * (3 * m * N - 1)


def m_conic_formula(m: int, N: int) -> int:
    return (3 * m * N - 1) * (2**m // 4 - 2)


def formula_applies(m: int, for_mathon: bool = False) -> bool:
    excluded = {3, 7} if for_mathon else {3}
    return is_prime(m) and m not in excluded


# -- classification ----------------------------------------------------------------------


@dataclass
class Denniston4Classes:
    m: int
    arc_count: int
    n_classes: int
    orbit_sizes: list[int]
    through_fixed_conic: list[int]
    representatives: list[tuple[int, int, int]]
    formula_N: Fraction | None
    formula_count: int

    def to_json(self, F: Field) -> dict:
        return {
            "q": F.q,
            "arc_count": self.arc_count,
            "arc_count_formula": self.formula_count,
            "classes": self.n_classes,
            "classes_formula": None if self.formula_N is None else str(self.formula_N),
            "orbit_sizes": sorted(set(self.orbit_sizes)),
            "arcs_through_C1_per_class": sorted(set(self.through_fixed_conic)),
            "representatives": [[F.fmt(x) for x in r] for r in self.representatives],
        }


def classify_denniston4(F: Field) -> Denniston4Classes:
    orbits = field_group_orbits(F)
    return Denniston4Classes(
        F.h,
        pencil_4arc_count(F),
        orbits.n_orbits,
        orbits.sizes,
        orbits.per_orbit_through(1),
        orbits.representatives(),
        denniston4_class_formula(F.h) if formula_applies(F.h) else None,
        pencil_4arc_formula(F.h),
    )


def count_pencil_4arcs(F: Field) -> int:
    return pencil_4arc_count(F)


@dataclass
class Mathon8Classes:
    m: int
    reps4: list[tuple[int, ...]]
    d_conics: int
    m_conics: int
    arcs: list[Arc]  # through the first base
    arcs_per_base: list[int]
    classes: dict[tuple, list[int]]  # canonical key -> indices into arcs (first base), or [] if unseen
    representatives: list[Arc]
    formula: Fraction | None
    within_hypotheses: bool
    failures: list[str] = dc_field(default_factory=list)

    @property
    def class_count(self) -> int:
        return len(self.classes)


SCALE_GUARD_Q = 32


def _arcs_through(F: Field, base: tuple[int, ...], reps, verify: bool, progress: Progress):
    plane = Plane(F)
    census = disjoint_conic_census(F, base, reps, progress=progress)
    base_arc = arc_from_conics(plane, [Conic(1, 1, x) for x in base], "denniston")
    arcs: dict[tuple, Arc] = {}
    failures = []
    for c in census.m_conics:
        K = extend_by_conic(base_arc, c)
        key = tuple(sorted(K.conics))
        if key in arcs:
            continue
        if verify:
            chk = verify_maximal_arc(plane, K.points)
            if not chk.ok or chk.degree != 8:
                failures.append(f"arc from {c.fmt(F)} fails verification: {chk.reason}")
        arcs[key] = K
    keyed = [(canonical_form(K).key, K) for K in arcs.values()]
    return census, keyed, failures


def _worker(args):
    h, irreducible, generator, base, reps, verify = args
    F = Field(h, irreducible, generator)
    census, keyed, failures = _arcs_through(F, base, reps, verify, None)
    return len(census.d_conics), len(census.m_conics), [(k, sorted(K.conics)) for k, K in keyed], failures


def classify_mathon8(
    F: Field,
    force: bool = False,
    verify: bool = True,
    threads: int | None = None,
    progress: Progress = None,
) -> Mathon8Classes:
    """Canonical-form partition of the Mathon 8-arcs through each representative 4-arc."""
    _require_odd(F)
    if F.q < 16:
        raise CensusError(f"q={F.q} is below the construction floor for degree-8 arcs")
    if F.q > SCALE_GUARD_Q and not force:
        raise CensusError(f"q={F.q} exceeds the scale guard (q <= {SCALE_GUARD_Q}); pass force")
    threads = threads or threads_from_env()
    orbits = field_group_orbits(F)
    reps4 = orbits.representatives()
    if progress:
        progress(f"{len(reps4)} class(es) of 4-arcs in the standard pencil")
    jobs = [(F.h, F.modulus, F.generator, base, reps4, verify) for base in reps4]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_worker, jobs))
    else:
        results = []
        for job in jobs:
            census, keyed, failures = _arcs_through(F, job[3], reps4, verify, progress)
            results.append((len(census.d_conics), len(census.m_conics),
                            [(k, K) for k, K in keyed], failures))
    plane = Plane(F)
    first_arcs: list[Arc] = []
    classes: dict[tuple, list[int]] = {}
    reps8: dict[tuple, Arc] = {}
    failures: list[str] = []
    for bi, (nd, nm, keyed, fails) in enumerate(results):
        failures.extend(fails)
        for key, K in keyed:
            if not isinstance(K, Arc):
                K = arc_from_conics(plane, K, "mathon")
            classes.setdefault(key, [])
            reps8.setdefault(key, K)
            if bi == 0:
                classes[key].append(len(first_arcs))
                first_arcs.append(K)
        if progress:
            progress(f"base {bi + 1}/{len(results)}: {nm // 4} arcs, {len(classes)} classes so far")
    nd0, nm0 = results[0][0], results[0][1]
    ordered = sorted(classes)
    return Mathon8Classes(
        F.h,
        reps4,
        nd0,
        nm0,
        first_arcs,
        [len(r[2]) for r in results],
        {k: classes[k] for k in ordered},
        [reps8[k] for k in ordered],
        mathon8_class_formula(F.h) if formula_applies(F.h, True) else None,
        formula_applies(F.h, True),
        failures,
    )


def match_exponent_arcs(F: Field, reps: Sequence[Arc], triples, span) -> dict[tuple, int | None]:
    """For each (k,l,m), the index of the representative it is isomorphic to."""
    from .arcs import mathon_arc, mathon_exponent_conics

    plane = reps[0].plane if reps else Plane(F)
    out = {}
    for klm in triples:
        K = mathon_arc(plane, mathon_exponent_conics(F, *klm, span))
        out[tuple(klm)] = next((i for i, R in enumerate(reps) if are_isomorphic(K, R)), None)
    return out
