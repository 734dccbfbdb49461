"""Series arithmetic against naive dict-based reference implementations."""

import random
from fractions import Fraction

import pytest

from genusforge.errors import (
    GridError,
    NonUnitError,
    RingMismatchError,
    TruncationError,
)
from genusforge.rings import LAURENT, RATIONAL, ComplexRing, LaurentZ
from genusforge.series import QSeries, geometric

from oracles import dexp, dinv, dlog, dmul, dproduct

HALF = Fraction(1, 2)


def qs(terms, order, offset=0, ring=RATIONAL):
    return QSeries.from_terms(ring, terms, order, offset=offset)


def as_dict(s):
    return {e: c for e, c in s.terms()}


def random_series(rng, order, offset=0, allow_zero_lead=True):
    coeffs = []
    for _ in range(order):
        if rng.random() < 0.4:
            coeffs.append(Fraction(0))
        else:
            coeffs.append(Fraction(rng.randint(-6, 6), rng.randint(1, 5)))
    if not allow_zero_lead and (not coeffs or not coeffs[0]):
        if not coeffs:
            coeffs = [Fraction(1)]
        coeffs[0] = Fraction(rng.randint(1, 5))
    return QSeries(RATIONAL, offset, coeffs, order)


# -- construction and the exponent grid -------------------------------------


def test_grid_rejects_off_grid_exponents():
    with pytest.raises(GridError):
        qs({Fraction(1, 3): 1}, 4)


def test_window_rejects_terms_beyond_order():
    with pytest.raises(TruncationError):
        qs({Fraction(5, 2): 1}, 4)


def test_offset_carries_prefactor_exponents():
    s = qs({Fraction(1, 8): 1, Fraction(9, 8): -1}, 4, offset=Fraction(1, 8))
    assert s.coefficient(Fraction(1, 8)) == 1
    assert s.coefficient(Fraction(9, 8)) == -1
    # below the offset the series is identically zero
    assert s.coefficient(Fraction(0)) == 0


def test_coefficient_beyond_window_is_an_error():
    s = qs({0: 1}, 2)
    with pytest.raises(TruncationError):
        s.coefficient(Fraction(3, 2))


def test_hash_is_refused():
    with pytest.raises(TypeError):
        hash(qs({0: 1}, 2))


# -- multiplication ---------------------------------------------------------


def test_mul_difference_of_squares():
    one_plus = qs({0: 1, 1: 1}, 6)
    one_minus = qs({0: 1, 1: -1}, 6)
    assert as_dict(one_plus * one_minus) == {Fraction(0): 1, Fraction(2): -1}


def test_mul_offsets_add():
    eighth = QSeries(RATIONAL, Fraction(1, 8), [Fraction(1)], 4)
    prod = eighth * eighth
    assert prod.offset == Fraction(1, 4)
    assert prod.coefficient(Fraction(1, 4)) == 1


def test_truncated_euler_product_matches_pentagonal_pattern():
    # prod over n <= 4 of (1 - q^n), checked against the naive dict product
    factors = [{Fraction(0): Fraction(1), Fraction(n): Fraction(-1)} for n in range(1, 5)]
    expect = dproduct(factors, Fraction(5))
    series = QSeries.one(RATIONAL, 10)
    for n in range(1, 5):
        series = series * qs({0: 1, n: -1}, 10)
    got = {e: c for e, c in series.terms() if e < 5}
    assert got == expect
    # the pattern below q^5 agrees with the full expansion 1 - q - q^2 + ...
    assert [series.coefficient(k) for k in range(5)] == [1, -1, -1, 0, 0]


def test_mul_matches_dict_oracle_on_random_series():
    rng = random.Random(20240817)
    for _ in range(25):
        a = random_series(rng, rng.randint(1, 9))
        b = random_series(rng, rng.randint(1, 9))
        prod = a * b
        expect = dmul(as_dict(a), as_dict(b), prod.end_exponent)
        assert as_dict(prod) == expect


def test_mul_ring_mismatch():
    with pytest.raises(RingMismatchError):
        qs({0: 1}, 2) * QSeries.one(LAURENT, 2)


def test_ring_axioms_on_random_series():
    rng = random.Random(94301)
    for _ in range(20):
        order = rng.randint(2, 7)
        a = random_series(rng, order)
        b = random_series(rng, order)
        c = random_series(rng, order)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)


# -- addition windows -------------------------------------------------------


def test_add_takes_window_intersection():
    a = qs({0: 1}, 8)
    b = QSeries(RATIONAL, 1, [Fraction(2), Fraction(0), Fraction(3)], 4)
    total = a + b
    assert total.offset == 0
    # b's knowledge ends at exponent 3, so the sum must too
    assert total.end_exponent == Fraction(3)
    assert as_dict(total) == {Fraction(0): 1, Fraction(1): 2, Fraction(2): 3}


# -- inversion --------------------------------------------------------------


def test_inv_geometric_series():
    s = qs({0: 1, 1: -1}, 8)
    assert [s.inv().coefficient(k) for k in range(4)] == [1, 1, 1, 1]


def test_inv_is_involution_on_random_units():
    rng = random.Random(555)
    for _ in range(15):
        a = random_series(rng, rng.randint(1, 8), allow_zero_lead=False)
        assert a.inv().inv() == a


def test_inv_times_self_is_one():
    rng = random.Random(77)
    for _ in range(15):
        a = random_series(rng, rng.randint(1, 8), allow_zero_lead=False)
        prod = a * a.inv()
        assert prod == QSeries.one(RATIONAL, prod.order)


def test_inv_matches_dict_oracle():
    rng = random.Random(31337)
    for _ in range(10):
        a = random_series(rng, rng.randint(2, 8), allow_zero_lead=False)
        inv = a.inv()
        expect = dinv(as_dict(a), inv.end_exponent)
        assert as_dict(inv) == {e: c for e, c in expect.items() if c}


def test_inv_of_laurent_coefficient_series():
    # 1/(1 - q z) expands to the sum of q^n z^n
    z = LaurentZ.monomial(1)
    s = QSeries.from_terms(LAURENT, {0: LaurentZ.monomial(0), 1: -z}, 8)
    inv = s.inv()
    back = s * inv
    assert back == QSeries.one(LAURENT, 8)
    for n in range(4):
        assert inv.coefficient(n) == LaurentZ.monomial(n)


def test_inv_zero_series_fails():
    with pytest.raises(NonUnitError):
        QSeries.zero(RATIONAL, 4).inv()


def test_inv_nonunit_laurent_lead_fails():
    two_terms = LaurentZ(0, (Fraction(1), Fraction(1)))
    s = QSeries.from_terms(LAURENT, {0: two_terms}, 4)
    with pytest.raises(NonUnitError):
        s.inv()


# -- exp and log ------------------------------------------------------------


def test_log_mercator():
    s = qs({0: 1, 1: 1}, 8)
    expect = [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(1, 3)]
    assert [s.log().coefficient(k) for k in range(4)] == expect


def test_exp_exponential_series():
    s = qs({1: 1}, 10)
    got = [s.exp().coefficient(k) for k in range(5)]
    assert got == [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]


def test_exp_log_round_trip_fixed():
    s = qs({0: 1, 1: -1, 2: 1}, 8)
    assert s.log().exp() == s


def test_exp_log_round_trips_random():
    rng = random.Random(271828)
    for _ in range(15):
        order = rng.randint(2, 8)
        a = random_series(rng, order)
        # exp needs zero constant term
        if a.coefficient(0):
            a = a - qs({0: a.coefficient(0)}, order)
        e = a.exp()
        assert e.log() == a.truncated(e.order)
        expect = dexp(as_dict(a), e.end_exponent)
        assert as_dict(e) == expect


def test_log_matches_dict_oracle():
    rng = random.Random(161803)
    for _ in range(15):
        order = rng.randint(2, 8)
        a = random_series(rng, order)
        shift = QSeries.one(RATIONAL, order) - qs({0: a.coefficient(0)}, order)
        a = a + shift  # force constant term 1
        lg = a.log()
        expect = dlog(as_dict(a), lg.end_exponent)
        assert as_dict(lg) == expect


def test_exp_requires_zero_constant_term():
    with pytest.raises(ValueError):
        qs({0: 1, 1: 1}, 4).exp()


def test_log_requires_constant_term_one():
    with pytest.raises(ValueError):
        qs({0: 2}, 4).log()


def test_exp_refused_outside_exact_rings():
    s = QSeries.from_terms(LAURENT, {1: LaurentZ.monomial(1)}, 4)
    with pytest.raises(RingMismatchError):
        s.exp()
    numeric = QSeries.from_terms(ComplexRing(), {1: 1.0}, 4)
    with pytest.raises(RingMismatchError):
        numeric.exp()


# -- reshaping helpers ------------------------------------------------------


def test_truncated_shrinks_only():
    s = qs({0: 1, 2: 5}, 8)
    t = s.truncated(3)
    assert t.end_exponent == Fraction(3, 2)
    with pytest.raises(TruncationError):
        t.truncated(8)


def test_shifted_moves_offset():
    s = qs({0: 1, 1: 1}, 4)
    moved = s.shifted(Fraction(1, 8))
    assert moved.offset == Fraction(1, 8)
    assert moved.coefficient(Fraction(9, 8)) == 1


def test_alternate_half_signs_flips_odd_slots():
    s = QSeries.from_terms(RATIONAL, {Fraction(1, 2): 3, 1: 5, Fraction(3, 2): 7}, 6)
    flipped = s.alternate_half_signs()
    assert flipped.coefficient(Fraction(1, 2)) == -3
    assert flipped.coefficient(1) == 5
    assert flipped.coefficient(Fraction(3, 2)) == -7


def test_geometric_helper_matches_inv():
    g = geometric(RATIONAL, 2, Fraction(3), 10)
    direct = qs({0: 1, 2: -3}, 10).inv()
    assert g == direct


# -- serialization ----------------------------------------------------------


def test_json_round_trip_rational():
    s = qs({Fraction(1, 2): Fraction(-3, 7), 2: 4}, 6)
    blob = s.to_json()
    assert blob["step"] == "1/2"
    assert QSeries.from_json(blob) == s


def test_json_round_trip_laurent():
    z = LaurentZ.monomial(-2, Fraction(5, 3))
    s = QSeries.from_terms(LAURENT, {Fraction(1, 8): z}, 3, offset=Fraction(1, 8))
    assert QSeries.from_json(s.to_json()) == s


def test_json_round_trip_complex():
    ring = ComplexRing(1e-9)
    s = QSeries(ring, 0, [1 + 2j, 0.5], 2)
    back = QSeries.from_json(s.to_json())
    assert back.ring == ring
    assert back == s


def test_equality_uses_normalization():
    a = QSeries(RATIONAL, 0, [Fraction(0), Fraction(0), Fraction(1)], 6)
    b = QSeries(RATIONAL, 1, [Fraction(1)], 4)
    # same known window end and same terms after stripping leading zeros
    assert a.normalized() == b.normalized()
