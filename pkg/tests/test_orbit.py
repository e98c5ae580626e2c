from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reebspec import (
    DomainError,
    Elliptic,
    EvenHyperbolic,
    OddHyperbolic,
    QuadExt,
    RationalInput,
    SimpleOrbit,
    check_superadditivity,
    cz_index,
    degree,
    is_dynamically_convex,
    is_good,
    mean_index,
)

from conftest import decimal_floor, unit_quadratics

S2 = QuadExt.sqrt(2)


@st.composite
def orbits(draw):
    r = draw(st.integers(-4, 6))
    tag = draw(st.sampled_from(["e", "h+", "h-"]))
    if tag == "e":
        kind = Elliptic(r, draw(unit_quadratics()))
    elif tag == "h+":
        kind = EvenHyperbolic(r)
    else:
        kind = OddHyperbolic(r)
    return SimpleOrbit("g", 1, kind)


def test_elliptic_index_example():
    g = SimpleOrbit("g", 1, Elliptic(1, S2 / 2))
    assert [cz_index(g, k) for k in (1, 2, 3)] == [3, 7, 11]
    assert degree(g, 1) == 2


def test_hyperbolic_indices():
    even = SimpleOrbit("h", 1, EvenHyperbolic(2))
    odd = SimpleOrbit("h", 1, OddHyperbolic(1))
    assert [cz_index(even, k) for k in (1, 2, 3)] == [4, 8, 12]
    assert [cz_index(odd, k) for k in (1, 2, 3)] == [3, 6, 9]


def test_bad_iterates_are_even_iterates_of_odd_hyperbolic():
    odd = SimpleOrbit("h", 1, OddHyperbolic(0))
    assert [is_good(odd, k) for k in range(1, 5)] == [True, False, True, False]
    even = SimpleOrbit("h", 1, EvenHyperbolic(0))
    assert all(is_good(even, k) for k in range(1, 5))


@given(unit_quadratics(), st.integers(-5, 5), st.integers(1, 10**6))
def test_elliptic_formula_against_decimal(alpha, r, k):
    g = SimpleOrbit("g", 1, Elliptic(r, alpha))
    assert cz_index(g, k) == 2 * k * r + 2 * decimal_floor(alpha * k) + 1
    assert cz_index(g, k) % 2 == 1


def test_elliptic_needs_irrational_angle_in_unit_interval():
    with pytest.raises(RationalInput):
        Elliptic(1, Fraction(1, 2))
    with pytest.raises(DomainError):
        Elliptic(1, S2)


def test_multiplicity_must_be_positive():
    g = SimpleOrbit("g", 1, OddHyperbolic(1))
    with pytest.raises(DomainError):
        cz_index(g, 0)


def test_action_must_be_positive():
    with pytest.raises(DomainError):
        SimpleOrbit("g", 1 - S2, EvenHyperbolic(1))


@given(orbits())
def test_json_round_trip(o):
    assert SimpleOrbit.from_json(o.to_json()) == o


def test_json_descriptor_shape():
    o = SimpleOrbit("g1", S2, Elliptic(1, S2 / 2))
    assert o.to_json() == {
        "label": "g1",
        "action": "(0+1*sqrt(2))/1",
        "kind": {"elliptic": {"r": 1, "alpha": "(0+1*sqrt(2))/2"}},
    }


@pytest.mark.parametrize(
    "obj",
    [
        {"label": "g", "action": "1"},
        {"label": "g", "action": "1", "kind": {"elliptic": {"r": 1}}},
        {"label": "g", "action": "1", "kind": {"parabolic": {"r": 1}}},
        {"label": "g", "action": "1", "kind": {"odd_hyperbolic": {"r": "1"}}},
        {"label": "g", "action": "1", "kind": {"odd_hyperbolic": {"r": 1, "mu": 2}}},
    ],
)
def test_json_rejects_malformed(obj):
    with pytest.raises(DomainError):
        SimpleOrbit.from_json(obj)


def test_iterate_record():
    it = SimpleOrbit("g", S2, OddHyperbolic(1)).iterate(2)
    assert (it.k, it.cz, it.degree, it.good) == (2, 6, 5, False)
    assert it.action == 2 * S2
    assert str(it) == "g^2"


@given(orbits(), st.lists(st.integers(1, 40), min_size=1, max_size=8))
def test_superadditivity(o, parts):
    res = check_superadditivity(o, parts)
    assert res.holds
    assert res.lhs == degree(o, sum(parts))
    assert res.rhs == sum(degree(o, k) for k in parts)


def test_superadditivity_strict_for_hyperbolic_split():
    # degree is CZ - 1 and CZ is linear, so splitting into s parts costs s - 1
    o = SimpleOrbit("h", 1, EvenHyperbolic(1))
    res = check_superadditivity(o, [1, 1, 1])
    assert (res.lhs, res.rhs) == (5, 3)


@given(orbits())
def test_mean_index_is_growth_rate(o):
    k = 10**4
    m = mean_index(o)
    # |CZ(g^k) - k * mean| stays bounded by a constant independent of k
    assert abs(cz_index(o, k) - m * k) <= 2


def test_dynamical_convexity():
    convex = [SimpleOrbit("g", 1, Elliptic(1, S2 / 2)), SimpleOrbit("h", 1, OddHyperbolic(1))]
    assert is_dynamically_convex(convex, 50)
    bad = [SimpleOrbit("h", 1, EvenHyperbolic(1))]
    chk = is_dynamically_convex(bad, 50)
    assert not chk
    assert chk.witness.k == 1 and chk.witness.cz == 2



@given(orbits(), st.integers(1, 60))
def test_dynamical_convexity_matches_brute_force(o, k_max):
    brute = next((k for k in range(1, k_max + 1) if cz_index(o, k) < 3), None)
    chk = is_dynamically_convex([o], k_max)
    assert chk.convex == (brute is None)
    if brute is not None:
        assert chk.witness.k == brute
