"""Acceptance criteria, runnable from pytest and from ``reebspec verify``.

Each criterion returns a ``CriterionResult``; its wall time counts toward
the verdict.  Random workloads use fixed seeds so every run is identical.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable

from .exactreal import LinComb, QuadExt, lincomb_floor, quad_floor
from .jumps import (
    find_affine_relation,
    find_common_jump,
    is_jump_subsequence,
    jump_sequence,
    kotschick_factor,
    quasimorphism_defect,
)
from .orbit import Elliptic, EvenHyperbolic, OddHyperbolic, SimpleOrbit, check_superadditivity
from .spectrum import (
    EllipsoidParams,
    Spectrum,
    Verdict,
    check_condition_O,
    classify,
    ellipsoid_spectrum,
    enumerate_iterates,
    find_degree_collision,
    hc_ranks,
    realize_from_ratio,
)
from .torus import (
    TorusTranslation,
    closure_description,
    density_check,
    orbit_points,
    rational_span_dim,
    relation_lattice,
    rotation_hit,
    satisfies_relations,
)

SQUAREFREE = (2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] criterion {self.number:2d}: {self.name} ({self.seconds:.2f}s / {self.budget:g}s){extra}"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "budget_seconds": self.budget,
            "detail": self.detail,
        }


# ---------------------------------------------------------------------------
# random workloads
# ---------------------------------------------------------------------------


def random_quadratic(rng: random.Random, lo: Fraction | int, hi: Fraction | int) -> QuadExt:
    """Random irrational ``(p + q sqrt d)/s`` strictly inside ``(lo, hi)``."""
    while True:
        d = rng.choice(SQUAREFREE)
        q = rng.choice([-1, 1]) * rng.randint(1, 9)
        s = rng.randint(1, 12)
        shift = q * QuadExt.sqrt(d)
        pmin = (lo * s - shift).floor() + 1
        pmax = (hi * s - shift).ceil() - 1
        if pmin > pmax:
            continue
        x = (rng.randint(pmin, pmax) + shift) / s
        if lo < x < hi:
            return x


def ratio_sample(n: int, seed: int) -> list[QuadExt]:
    rng = random.Random(seed)
    return [random_quadratic(rng, 1, 10) for _ in range(n)]


CRITERION_2_RATIOS = (50, 20240202)


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def _decimal_iterate_order(a1: int, a2_squared: int, degree_cap: int) -> list[tuple[str, int]]:
    """Independent 50-digit float enumeration for E(a1, sqrt(a2_squared))."""
    with localcontext() as ctx:
        ctx.prec = 50
        A1 = Decimal(a1)
        A2 = Decimal(a2_squared).sqrt()
        # (action, r + alpha) for the two simple orbits of E(a1, a2), a1 < a2
        data = {"gamma1": (A1, 1 + A1 / A2), "gamma2": (A2, 1 + A2 / A1)}
        rows = []
        for label, (action, rot) in data.items():
            k = 1
            while True:
                deg = 2 * int((k * rot).to_integral_value(rounding="ROUND_FLOOR"))
                if deg > degree_cap:
                    break
                rows.append((k * action, label, k, deg))
                k += 1
        rows.sort()
    return [(label, k) for _, label, k, _ in rows]


def criterion_1() -> tuple[bool, str]:
    e = EllipsoidParams(1, QuadExt.sqrt(2))
    its = enumerate_iterates(ellipsoid_spectrum(e), degree_cap=24)
    good = [it for it in its if it.good]
    degrees = [it.degree for it in good]
    order = [(it.label, it.k) for it in good]
    expected = [("gamma1", 1), ("gamma2", 1), ("gamma1", 2), ("gamma2", 2), ("gamma1", 3), ("gamma1", 4),
                ("gamma2", 3), ("gamma1", 5), ("gamma2", 4), ("gamma1", 6), ("gamma1", 7), ("gamma2", 5)]
    oracle = _decimal_iterate_order(1, 2, 24)
    ok = degrees == list(range(2, 25, 2)) and order == expected and order == oracle
    return ok, f"{len(good)} good iterates, degrees {degrees[0]}..{degrees[-1]}"


def criterion_2() -> tuple[bool, str]:
    target = {d: 1 for d in range(2, 201, 2)}
    bad = [str(rho) for rho in ratio_sample(*CRITERION_2_RATIOS)
           if hc_ranks(ellipsoid_spectrum(EllipsoidParams(1, rho)), 200) != target]
    return not bad, f"{len(bad)} of 50 ratios off-target" + (f": {bad[:3]}" if bad else "")


def criterion_3() -> tuple[bool, str]:
    failures = []
    for rho in ratio_sample(*CRITERION_2_RATIOS):
        e = EllipsoidParams(1, rho)
        chk = check_condition_O(ellipsoid_spectrum(e), 1000 * e.a1)
        if not chk:
            failures.append(str(rho))
    return not failures, f"{len(failures)} of 50 spectra violate the order condition"


def criterion_4() -> tuple[bool, str]:
    rng = random.Random(4)
    failures = []
    for _ in range(100):
        rho = random_quadratic(rng, 1, 20)
        real = realize_from_ratio(rho)
        f = quad_floor(rho)
        eq_ra = (1 / rho, rho - f, 1, f + 1)
        identities = (
            real.alpha1 == real.ellipsoid.a1 / real.ellipsoid.a2
            and real.ellipsoid.a2 / real.ellipsoid.a1 == (real.r2 + real.alpha2) / (1 + real.alpha1)
            and real.r2 == quad_floor(1 / real.alpha1) + 1
        )
        res = classify(ellipsoid_spectrum(real.ellipsoid))
        got = res.realization
        ok = (
            res.verdict is Verdict.CONSISTENT_TWO_ORBIT
            and got is not None
            and (got.alpha1, got.alpha2, got.r1, got.r2) == eq_ra
            and identities
        )
        if not ok:
            failures.append(str(rho))
    return not failures, f"{len(failures)} of 100 round trips failed"


def _random_orbit(rng: random.Random) -> SimpleOrbit:
    r = rng.randint(-3, 5)
    kind = rng.choice(("e", "h+", "h-"))
    if kind == "e":
        return SimpleOrbit("g", 1, Elliptic(r, random_quadratic(rng, 0, 1)))
    if kind == "h+":
        return SimpleOrbit("g", 1, EvenHyperbolic(r))
    return SimpleOrbit("g", 1, OddHyperbolic(r))


def _random_partition(rng: random.Random, total: int) -> list[int]:
    parts = []
    while total:
        k = rng.randint(1, total)
        parts.append(k)
        total -= k
    return parts


def criterion_5() -> tuple[bool, str]:
    rng = random.Random(5)
    failures = 0
    for _ in range(10_000):
        o = _random_orbit(rng)
        parts = _random_partition(rng, rng.randint(1, 200))
        if not check_superadditivity(o, parts).holds:
            failures += 1
    return failures == 0, f"{failures} of 10000 cases violate superadditivity"


def _positive_slope_triple(rng: random.Random) -> tuple[QuadExt, QuadExt, QuadExt]:
    xi1 = random_quadratic(rng, 0, 1)

    def related() -> QuadExt:
        p = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        q = Fraction(rng.randint(0, 5), rng.randint(1, 6))
        return (p * xi1 + q).frac()

    return xi1, related(), related()


def criterion_6() -> tuple[bool, str]:
    s2 = QuadExt.sqrt(2)
    xi1 = 1 / s2
    xi2 = xi1 - Fraction(1, 2)
    sub = is_jump_subsequence(xi2, xi1, 10_000)
    rel = find_affine_relation(xi1, xi2)
    part_a = sub.holds and rel is not None and (rel.slope, rel.offset) == (1, Fraction(-1, 2))

    rng = random.Random(6)
    misses = 0
    for _ in range(50):
        _, x2, x3 = _positive_slope_triple(rng)
        r = find_affine_relation(x2, x3)
        k = find_common_jump(x2, x3, 10_000)
        if r is None or r.slope <= 0 or k is None:
            misses += 1
    part_b = misses == 0

    broken = 0
    for rho in ratio_sample(*CRITERION_2_RATIOS):
        e = EllipsoidParams(1, rho)
        g1, _ = ellipsoid_spectrum(e).orbits
        if jump_sequence(g1.kind.alpha, 10_000).terms != jump_sequence(e.a1 / e.a2, 10_000).terms:
            broken += 1
    part_c = broken == 0
    return part_a and part_b and part_c, f"(a) {part_a}, (b) {50 - misses}/50, (c) {50 - broken}/50"


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(7)
    bases = [QuadExt.sqrt(2) / 4, (QuadExt.sqrt(5) - 1) / 4] + [random_quadratic(rng, 0, Fraction(1, 2)) for _ in range(3)]
    failures = []
    for xi1 in bases:
        for k in range(1, 6):
            xi2 = xi1 / k
            chk = kotschick_factor(xi1, xi2, 500)
            rep = quasimorphism_defect(xi1, xi2, 500)
            if chk.factor != k or rep.defect != 0:
                failures.append((str(xi1), k))
    return not failures, f"{25 - len(failures)}/25 pairs recover k with zero defect"


def criterion_8() -> tuple[bool, str]:
    s2, s3 = QuadExt.sqrt(2), QuadExt.sqrt(3)
    dense = TorusTranslation.from_scalars([s2 - 1, s3 - 1])
    rep = density_check(dense, Fraction(2, 100), 100_000)
    ok_dense = rational_span_dim(dense) == 3 and rep.dense

    degen = TorusTranslation.from_scalars([s2 / 2, s2 / 4])
    desc = closure_description(degen)
    pts = orbit_points(degen, 1000)
    ok_degen = (
        relation_lattice(degen) == [[1, -2, 0]]
        and desc.dimension == 1
        and desc.cosets == 1
        and all(satisfies_relations(p, desc.relations) for p in pts)
    )

    rat = TorusTranslation.from_scalars([Fraction(1, 3)])
    cyc = orbit_points(rat, 9)
    ok_rat = (
        closure_description(rat).cosets == 3
        and all(cyc[m] == cyc[m % 3] for m in range(10))
        and len({p[0] for p in cyc[:3]}) == 3
    )
    detail = f"dense {ok_dense} (worst gap {rep.worst_gap:.4g}), degenerate {ok_degen}, rational {ok_rat}"
    return ok_dense and ok_degen and ok_rat, detail


def criterion_9() -> tuple[bool, str]:
    s2 = QuadExt.sqrt(2)
    case1 = Spectrum([SimpleOrbit("g1", 1, OddHyperbolic(1)), SimpleOrbit("g2", s2, OddHyperbolic(2))])
    hit = find_degree_collision(case1, 200)
    ok1 = hit is not None and hit[0].degree == 14

    rng = random.Random(9)
    misses = 0
    for i in range(100):
        g2 = SimpleOrbit("g2", random_quadratic(rng, 1, 10), Elliptic(rng.randint(1, 6), random_quadratic(rng, 0, 1)))
        sp = Spectrum([SimpleOrbit("g1", 1, OddHyperbolic(1)), g2])
        if find_degree_collision(sp, 10_000) is None:
            misses += 1
    ok2 = misses == 0

    nonconvex = Spectrum([SimpleOrbit("g1", 1, EvenHyperbolic(1)), SimpleOrbit("g2", s2, Elliptic(0, s2 / 2))])
    ok3 = classify(nonconvex).verdict is Verdict.NOT_DYNAMICALLY_CONVEX
    relaxed = classify(nonconvex, check_convexity=False)
    witness = find_degree_collision(nonconvex, 200)
    ok3 = ok3 and not relaxed.consistent and witness is not None
    return ok1 and ok2 and ok3, (
        f"two odd-hyperbolic orbits collide at degree {hit[0].degree if hit else None}, "
        f"odd-hyperbolic plus elliptic {100 - misses}/100, nonconvex relaxed verdict {relaxed.verdict.value}, collision degree {witness[0].degree if witness else None}"
    )


def certified_circle_distance_below(k: int, step: QuadExt, target: QuadExt, v: int, tol: Fraction, bits: int) -> bool:
    """Interval re-check of ``dist(k*step, target) < tol`` on ``R / vZ``."""
    x = LinComb.from_quad(k * step - target)
    w = x - v * lincomb_floor(x * Fraction(1, v))
    lo, hi = w.enclose(bits)
    return min(hi, v - lo) < tol


def criterion_10() -> tuple[bool, str]:
    step = 1 + QuadExt.sqrt(2)
    target = QuadExt(5, 0, 4)
    coarse = rotation_hit(3, step, target, Fraction(1, 100), 10**7)
    fine = rotation_hit(3, step, target, Fraction(1, 10**6), 10**7)
    ok = (
        coarse.k == 3
        and fine.k <= 10**7
        and certified_circle_distance_below(coarse.k, step, target, 3, Fraction(1, 100), 256)
        and certified_circle_distance_below(fine.k, step, target, 3, Fraction(1, 10**6), 256)
    )
    return ok, f"tol 1e-2 at k={coarse.k}, tol 1e-6 at k={fine.k}"


CRITERIA: dict[int, tuple[str, float, Callable[[], tuple[bool, str]]]] = {
    1: ("ellipsoid spectrum table E(1, sqrt 2)", 1.0, criterion_1),
    2: ("one generator in each even degree >= 2", 30.0, criterion_2),
    3: ("condition (O) on random ellipsoids", 60.0, criterion_3),
    4: ("action-ratio realization round trip", 30.0, criterion_4),
    5: ("superadditivity of degrees", 10.0, criterion_5),
    6: ("jump subsequences, relations and common jumps", 60.0, criterion_6),
    7: ("integer factor for xi1 <= 1/2", 10.0, criterion_7),
    8: ("torus orbit closures", 120.0, criterion_8),
    9: ("exhaustive collision searches", 60.0, criterion_9),
    10: ("rotation hits", 10.0, criterion_10),
}


def run_criterion(number: int) -> CriterionResult:
    name, budget, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, reported with its message
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if ok and elapsed >= budget:
        ok, detail = False, f"{detail}; over time budget"
    return CriterionResult(number, name, ok, elapsed, budget, detail)


def run_all(only: list[int] | None = None) -> list[CriterionResult]:
    return [run_criterion(n) for n in sorted(only or CRITERIA)]
