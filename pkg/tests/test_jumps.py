import warnings
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from reebspec import (
    DomainError,
    FieldMismatch,
    KotschickAnomaly,
    QuadExt,
    SubsequenceViolation,
    find_affine_relation,
    find_common_jump,
    is_jump,
    is_jump_subsequence,
    jump_index_map,
    jump_sequence,
    kotschick_factor,
    quasimorphism_defect,
)

from conftest import decimal_floor, unit_quadratics

S2 = QuadExt.sqrt(2)
GOLDEN = (QuadExt.sqrt(5) - 1) / 2


def brute_jumps(xi, limit):
    """Jumps of xi up to limit, read off [k xi] directly (decimal oracle)."""
    floors = [decimal_floor(xi * k) for k in range(limit + 2)]
    return [k for k in range(1, limit + 1) if floors[k + 1] - floors[k] == 1]


def test_sequence_example():
    assert jump_sequence(S2 / 2, 6).terms == (1, 2, 4, 5, 7, 8)


@given(unit_quadratics())
@settings(max_examples=40)
def test_sequence_matches_brute_force(xi):
    assume(xi > Fraction(1, 20))  # keeps the brute-force scan short
    seq = jump_sequence(xi, 30)
    brute = brute_jumps(xi, seq.terms[-1])
    assert list(seq.terms) == brute[:30]


@given(unit_quadratics(), st.integers(1, 500))
def test_is_jump_matches_sequence(xi, k):
    terms = jump_sequence(xi, k).terms  # j_k >= k, so every jump <= k is listed
    assert is_jump(xi, k) == (k in terms)


def test_inputs_must_be_irrational_in_unit_interval():
    with pytest.raises(DomainError):
        jump_sequence(Fraction(1, 3), 5)
    with pytest.raises(DomainError):
        jump_sequence(S2, 5)
    with pytest.raises(DomainError):
        jump_sequence(S2 / 2, 0)


def test_shifted_example_is_subsequence_with_relation():
    xi1 = S2 / 2
    xi2 = xi1 - Fraction(1, 2)
    chk = is_jump_subsequence(xi2, xi1, 10_000)
    assert chk.holds and chk.horizon == 10_000 and chk.witness is None
    rel = find_affine_relation(xi1, xi2)
    assert (rel.slope, rel.offset, rel.degenerate) == (1, Fraction(-1, 2), False)
    assert rel.sign == 1


def test_cross_field_subsequence_fails_with_witness():
    chk = is_jump_subsequence(S2 / 2, GOLDEN, 1000)
    assert not chk
    first_bad = next(k for k in brute_jumps(S2 / 2, 50) if k not in brute_jumps(GOLDEN, 51))
    assert chk.witness == first_bad


@given(unit_quadratics(d=3), unit_quadratics(d=3))
@settings(max_examples=40)
def test_subsequence_agrees_with_brute_force(xi2, xi1):
    chk = is_jump_subsequence(xi2, xi1, 20)
    j2 = jump_sequence(xi2, 20).terms
    j1 = set(brute_jumps(xi1, j2[-1]))
    bad = [k for k in j2 if k not in j1]
    assert chk.holds == (not bad)
    if bad:
        assert chk.witness == bad[0]


@given(unit_quadratics(d=7), st.fractions(min_value=-3, max_value=3, max_denominator=6),
       st.fractions(min_value=-3, max_value=3, max_denominator=6))
def test_affine_relation_recovers_construction(xi1, p, q):
    if p == 0:
        return
    rel = find_affine_relation(xi1, p * xi1 + q)
    assert (rel.slope, rel.offset) == (p, q)


def test_affine_relation_field_mismatch():
    with pytest.raises(FieldMismatch):
        find_affine_relation(S2 / 2, GOLDEN)


def test_affine_relation_none_for_rational_versus_irrational():
    assert find_affine_relation(Fraction(1, 3), S2 / 2) is None


def test_common_jump_matches_brute_force():
    xi2, xi3 = (S2 / 2), (3 * S2 / 4 - Fraction(1, 2))
    k = find_common_jump(xi2, xi3, 10_000)
    both = sorted(set(brute_jumps(xi2, 100)) & set(brute_jumps(xi3, 100)))
    assert k == both[0]


def test_common_jump_respects_bound():
    xi2, xi3 = S2 / 2, 1 - S2 / 2
    # xi3 = 1 - xi2: [k xi3] = k - [k xi2] - 1, so jumps of one are non-jumps of the other
    assert find_common_jump(xi2, xi3, 10_000) is None


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_kotschick_factor(k):
    xi1 = S2 / 4
    chk = kotschick_factor(xi1, xi1 / k, 500)
    assert chk.factor == k
    assert chk.subsequence.holds


def test_kotschick_rejects_large_xi1():
    with pytest.raises(DomainError):
        kotschick_factor(S2 / 2, S2 / 4, 100)


def test_kotschick_no_factor_without_subsequence():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        chk = kotschick_factor(S2 / 4, S2 / 6, 200)
    assert chk.factor is None
    assert not chk.subsequence.holds


def test_kotschick_anomaly_warns():
    # xi2 is so close to xi1/2 that a short horizon cannot tell them apart
    xi1 = S2 / 4 - Fraction(1, 10)  # ~0.2536, and xi1/2 ~ 0.1268
    xi2 = xi1 / 2 + Fraction(1, 100000)
    with pytest.warns(KotschickAnomaly):
        chk = kotschick_factor(xi1, xi2, 3)
    assert chk.factor is None and chk.subsequence.holds


@given(unit_quadratics(), st.integers(1, 5))
@settings(max_examples=30)
def test_jump_index_map_and_defect(xi, k):
    xi1 = xi / 2
    xi2 = xi1 / k
    m = jump_index_map(xi1, xi2, 60)
    assert m == [k * n for n in range(1, 61)]
    rep = quasimorphism_defect(xi1, xi2, 60)
    assert rep.defect == 0 and rep.horizon == 60


def test_jump_index_map_detects_violation():
    with pytest.raises(SubsequenceViolation) as info:
        jump_index_map(GOLDEN, S2 / 2, 100)
    assert info.value.k == is_jump_subsequence(S2 / 2, GOLDEN, 100).witness


def test_defect_bound_is_reported():
    rep = quasimorphism_defect(S2 / 2, S2 / 2 - Fraction(1, 2), 100)
    assert rep.bound == 2  # [3 / sqrt 2]
    assert 0 <= rep.defect <= rep.bound
