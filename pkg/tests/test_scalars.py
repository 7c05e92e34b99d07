import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kvcharp.chvergne import named_series
from kvcharp.errors import FieldMismatch, NegativeValuation, NotPrimeError
from kvcharp.scalars import (GF, INF, QQ, FpScalar, bernoulli, is_prime, p_valuation,
                             reduce_mod_p, scalar_from_json, scalar_to_json,
                             staudt_check, wilson_check)

rationals = st.fractions(max_denominator=10 ** 6).filter(lambda q: abs(q.numerator) < 10 ** 9)
nonzero = rationals.filter(bool)
primes = st.sampled_from([3, 5, 7, 11, 13])


@pytest.mark.parametrize("q, p, v", [
    (Fraction(1, 6), 3, -1),
    (0, 5, INF),
    (Fraction(50, 3), 5, 2),
    (Fraction(50, 3), 3, -1),
    (-125, 5, 3),
])
def test_p_valuation(q, p, v):
    assert p_valuation(q, p) == v


def test_p_valuation_rejects_composite():
    with pytest.raises(NotPrimeError):
        p_valuation(3, 9)


@given(nonzero, nonzero, primes)
def test_valuation_of_product_is_additive(a, b, p):
    assert p_valuation(a * b, p) == p_valuation(a, p) + p_valuation(b, p)


@given(rationals, rationals, primes)
def test_valuation_of_sum_is_ultrametric(a, b, p):
    assert p_valuation(a + b, p) >= min(p_valuation(a, p), p_valuation(b, p))


def test_reduce_mod_p_examples():
    assert reduce_mod_p(Fraction(1, 6), 5) == 1
    assert reduce_mod_p(Fraction(-1, 6), 7).residue == 1
    with pytest.raises(NegativeValuation):
        reduce_mod_p(Fraction(1, 3), 3)


def _egcd_inverse(a, p):
    # independent of pow(a, -1, p)
    r0, r1, s0, s1 = a % p, p, 1, 0
    while r1:
        q = r0 // r1
        r0, r1, s0, s1 = r1, r0 - q * r1, s1, s0 - q * s1
    return s0 % p


@given(rationals.filter(lambda q: q.denominator % 7), st.just(7))
def test_reduce_mod_p_matches_extended_gcd(q, p):
    assert reduce_mod_p(q, p).residue == q.numerator * _egcd_inverse(q.denominator, p) % p


@given(rationals, rationals, primes)
def test_reduce_mod_p_is_a_ring_map(a, b, p):
    if p_valuation(a, p) < 0 or p_valuation(b, p) < 0:
        return
    assert reduce_mod_p(a * b, p) == reduce_mod_p(a, p) * reduce_mod_p(b, p)
    assert reduce_mod_p(a + b, p) == reduce_mod_p(a, p) + reduce_mod_p(b, p)


def test_fp_arithmetic():
    a = FpScalar(3, 7)
    assert a + 5 == 1
    assert a * a.inverse() == 1
    assert -a == 4
    assert (a / 3) == 1
    assert FpScalar(6, 7).signed() == -1
    with pytest.raises(FieldMismatch):
        a + FpScalar(1, 5)
    with pytest.raises(FieldMismatch):
        a + Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        FpScalar(0, 7).inverse()


def test_fields():
    assert GF(5) is GF(5)
    assert GF(5)(Fraction(1, 2)) == 3
    assert QQ(3) == Fraction(3)
    with pytest.raises(NotPrimeError):
        GF(2)
    with pytest.raises(FieldMismatch):
        QQ(FpScalar(1, 5))


def test_primality():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("m, b", [(0, 1), (1, Fraction(1, 2)), (2, Fraction(1, 6)),
                                  (3, 0), (4, Fraction(-1, 30)), (12, Fraction(-691, 2730))])
def test_bernoulli(m, b):
    assert bernoulli(m) == b


def test_bernoulli_matches_inverse_theta():
    # t / (1 - e^{-t}) is the reciprocal of theta
    inv = named_series("theta_inv", 20)
    assert all(inv[m] * math.factorial(m) == bernoulli(m) for m in range(21))


def test_odd_bernoulli_vanish():
    assert all(bernoulli(2 * k + 1) == 0 for k in range(1, 21))


@pytest.mark.parametrize("p, m, divides, residue", [(5, 4, True, 4), (7, 6, True, 6), (5, 2, False, None)])
def test_staudt_examples(p, m, divides, residue):
    r = staudt_check(p, m)
    assert r.divides == divides and r.p_integral and r.holds
    if residue is None:
        assert r.residue_if_divides is None
    else:
        assert r.residue_if_divides == residue


def test_staudt_range():
    for p in filter(is_prime, range(3, 38)):
        for m in range(2, 41, 2):
            assert staudt_check(p, m).holds, (p, m)


def test_wilson():
    assert wilson_check(5) and wilson_check(3) and wilson_check(13)
    assert all(wilson_check(p) for p in range(2, 201) if is_prime(p))


def test_scalar_json_round_trip():
    for c in (Fraction(-3, 14), FpScalar(4, 11)):
        assert scalar_from_json(scalar_to_json(c)) == c
    assert scalar_to_json(Fraction(1, 2)) == {"num": "1", "den": "2"}
