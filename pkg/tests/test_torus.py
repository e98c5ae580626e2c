from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reebspec import (
    DomainError,
    FieldMismatch,
    LinComb,
    NotFound,
    QuadExt,
    TorusTranslation,
    circle_distance,
    closure_description,
    density_check,
    orbit_points,
    rational_span_dim,
    relation_lattice,
    rotation_hit,
    satisfies_relations,
)
from reebspec.exactreal import lincomb_floor

from conftest import unit_quadratics

S2, S3 = QuadExt.sqrt(2), QuadExt.sqrt(3)
small_fracs = st.fractions(min_value=-2, max_value=2, max_denominator=5)


def relation_value(rel, xi):
    return sum((c * x for c, x in zip(rel, xi)), LinComb.rational(rel[-1], xi[0].basis))


def test_degenerate_example():
    t = TorusTranslation.from_scalars([S2 / 2, S2 / 4])
    assert rational_span_dim(t) == 2
    assert relation_lattice(t) == [[1, -2, 0]]
    desc = closure_description(t)
    assert (desc.dimension, desc.cosets) == (1, 1)
    assert desc.directions == ((2, 1),)
    assert all(satisfies_relations(p, desc.relations) for p in orbit_points(t, 200))


def test_rational_example():
    t = TorusTranslation.from_scalars([Fraction(1, 2), Fraction(1, 3)])
    assert relation_lattice(t) == [[2, 0, -1], [0, 3, -1]]
    desc = closure_description(t)
    assert (desc.dimension, desc.cosets) == (0, 6)
    pts = orbit_points(t, 12)
    assert len(set(pts[:6])) == 6 and pts[6] == pts[0]


def test_rational_period_three():
    pts = orbit_points(TorusTranslation.from_scalars([Fraction(1, 3)]), 6)
    assert [p[0] for p in pts[:4]] == [LinComb.rational(v, ["1"]) for v in (0, Fraction(1, 3), Fraction(2, 3), 0)]


def test_independent_coordinates_have_no_relations():
    t = TorusTranslation.from_scalars([S2 - 1, S3 - 1])
    assert rational_span_dim(t) == 3
    assert relation_lattice(t) == []
    desc = closure_description(t)
    assert (desc.dimension, desc.cosets) == (2, 1)


def test_doubling_example():
    x = (S2 - 1) / 2
    t = TorusTranslation.from_scalars([x, x + Fraction(1, 2)])
    desc = closure_description(t)
    assert desc.relations == ((2, -2, 1),)
    assert (desc.dimension, desc.cosets) == (1, 2)
    # brute-force coset count: the orbit alternates between two parallel circles
    gaps = {(p[1] - p[0]).frac() for p in orbit_points(t, 50)}
    assert len(gaps) == 2


def test_coordinates_reduced_mod_one():
    t = TorusTranslation.from_scalars([S2 + 3])
    assert t.xi[0] == LinComb.from_quad(S2 - 1, t.basis)


def test_mixed_bases_rejected():
    with pytest.raises(FieldMismatch):
        TorusTranslation([LinComb(["1", "sqrt(2)"], [0, 1]), LinComb(["1", "sqrt(3)"], [0, 1])])
    with pytest.raises(DomainError):
        TorusTranslation([])


def test_json_round_trip():
    t = TorusTranslation.from_scalars([S2 / 2, Fraction(1, 3)])
    assert TorusTranslation.from_json(t.to_json()).xi == t.xi
    with pytest.raises(DomainError):
        TorusTranslation.from_json({"x": []})


@given(unit_quadratics(d=5), st.lists(st.tuples(small_fracs, small_fracs), min_size=1, max_size=3))
@settings(max_examples=40)
def test_relation_lattice_properties(theta, coeffs):
    # xi_i = p_i * theta + q_i: every relation holds exactly and the rank is right
    t = TorusTranslation.from_scalars([p * theta + q for p, q in coeffs])
    rel = relation_lattice(t)
    assert len(rel) == t.n + 1 - rational_span_dim(t)
    for r in rel:
        assert relation_value(r, t.xi).is_rational and relation_value(r, t.xi).coeffs[0] == 0
        assert gcd(*r) == 1  # the lattice is saturated, so basis rows are primitive


@given(unit_quadratics(d=5), small_fracs.filter(bool), small_fracs.filter(bool), small_fracs, small_fracs)
@settings(max_examples=40)
def test_coset_count_against_orbit(theta, p1, p2, q1, q2):
    # two coordinates driven by one irrational: the closure is d parallel circles,
    # distinguished by the rational value of the primitive character on the orbit
    t = TorusTranslation.from_scalars([p1 * theta + q1, p2 * theta + q2])
    desc = closure_description(t)
    assert desc.dimension == 1
    (a,) = [list(r[:-1]) for r in desc.relations]
    g = gcd(*a)
    prim = [c // g for c in a]
    c = sum((k * x for k, x in zip(prim, t.xi)), LinComb.rational(0, t.basis))
    assert c.is_rational
    values = {(m * c).frac() for m in range(4 * g + 1)}
    assert desc.cosets == g == len(values)


def test_density_dense_case():
    t = TorusTranslation.from_scalars([S2 - 1, S3 - 1])
    rep = density_check(t, Fraction(1, 20), 5000)
    assert rep.dense and rep.relations_exact
    assert rep.orbit_length == 5001 and rep.worst_gap < 0.05


def test_density_fails_for_short_orbit():
    t = TorusTranslation.from_scalars([S2 - 1, S3 - 1])
    rep = density_check(t, Fraction(1, 100), 20)
    assert not rep.dense and rep.worst_gap >= 0.01


def test_density_degenerate_and_rational():
    assert density_check(TorusTranslation.from_scalars([S2 / 2, S2 / 4]), Fraction(1, 50), 2000)
    rat = density_check(TorusTranslation.from_scalars([Fraction(1, 2), Fraction(1, 3)]), Fraction(1, 50), 6)
    assert rat.dense and rat.net_size == 6


def test_density_rejects_bad_parameters():
    t = TorusTranslation.from_scalars([S2 - 1])
    with pytest.raises(DomainError):
        density_check(t, 0, 10)
    with pytest.raises(DomainError):
        density_check(t, Fraction(1, 10**9), 10)


# -- circle rotations ------------------------------------------------------


def brute_rotation(v, step, target, tol, k_max):
    for k in range(1, k_max + 1):
        if circle_distance(k * step, target, v) < tol:
            return k
    return None


def test_rotation_example():
    step, target = 1 + S2, QuadExt(5, 0, 4)
    assert rotation_hit(3, step, target, Fraction(1, 100), 10**7).k == 3
    fine = rotation_hit(3, step, target, Fraction(1, 10**6), 10**7)
    assert fine.distance < Fraction(1, 10**6)
    assert fine.distance == circle_distance(fine.k * step, target, 3)


def test_rotation_is_minimal_on_fine_tolerance():
    step, target = 1 + S2, QuadExt(5, 0, 4)
    hit = rotation_hit(3, step, target, Fraction(1, 10**4), 10**6)
    assert hit.k == brute_rotation(3, step, target, Fraction(1, 10**4), hit.k)


@given(unit_quadratics(), st.fractions(0, 5, max_denominator=7), st.integers(1, 5),
       st.sampled_from([Fraction(1, 10), Fraction(1, 50), Fraction(1, 300)]))
@settings(max_examples=60)
def test_rotation_matches_brute_force(alpha, target, v, tol):
    step = alpha + 2
    k_max = 400  # above the linear-scan cutoff, so the Euclid search runs
    expect = brute_rotation(v, step, QuadExt.coerce(target), tol, k_max)
    if expect is None:
        with pytest.raises(NotFound):
            rotation_hit(v, step, target, tol, k_max)
    else:
        assert rotation_hit(v, step, target, tol, k_max).k == expect


def test_rotation_not_found_carries_bound():
    with pytest.raises(NotFound) as info:
        rotation_hit(3, 1 + S2, QuadExt(5, 0, 4), Fraction(1, 10**9), 100)
    assert info.value.bound == 100


@pytest.mark.parametrize("args", [(0, 1 + S2, 0, Fraction(1, 2), 10), (3, Fraction(1, 2), 0, Fraction(1, 2), 10),
                                  (3, S2, 0, 0, 10), (3, S2, 0, Fraction(1, 2), 0)])
def test_rotation_rejects_bad_parameters(args):
    with pytest.raises(DomainError):
        rotation_hit(*args)


def test_circle_distance_is_symmetric_and_bounded():
    d = circle_distance(S2 * 7, QuadExt(1), 3)
    assert 0 <= d <= Fraction(3, 2)
    assert d == circle_distance(QuadExt(1), S2 * 7, 3)


def test_rotation_certified_by_intervals():
    step, target = 1 + S2, QuadExt(5, 0, 4)
    hit = rotation_hit(3, step, target, Fraction(1, 10**6), 10**7)
    x = LinComb.from_quad(hit.k * step - target)
    w = x - 3 * lincomb_floor(x * Fraction(1, 3))
    lo, hi = w.enclose(256)
    assert min(hi, 3 - lo) < Fraction(1, 10**6)
