from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kvcharp.errors import (AlphabetMismatch, ConstantTermViolation, FieldMismatch,
                            NonzeroConstantTerm)
from kvcharp.notation import parse_assoc
from kvcharp.scalars import GF, QQ
from kvcharp.words import (XY, Alphabet, AssocPoly, assoc_mul, cyclic_trace, decompose,
                           exp_trunc, log_trunc, min_rotation, quad_canonical,
                           quadratic_trace, transpose)

x, y = AssocPoly.gens()
one = AssocPoly.one()


def P(text, field=QQ):
    return parse_assoc(text, XY, field)


def polys(maxlen=4, min_len=0, field=QQ):
    words = st.lists(st.sampled_from([0, 1]), min_size=min_len, max_size=maxlen).map(tuple)
    return st.dictionaries(words, st.integers(-5, 5), max_size=6).map(
        lambda d: AssocPoly(d, XY, field))


def test_mul_examples():
    assert assoc_mul(x, y) == P("xy")
    assert assoc_mul(x + y, x + y) == P("xx + xy + yx + yy")
    assert assoc_mul(P("xy - yx"), x) == P("xyx - yxx")


def test_mul_truncates():
    assert (x + y).mul(x + y, maxdeg=1) == 0
    assert (one + x).power(3, maxdeg=2) == P("1 + 3*x + 3*xx")


def test_mismatches_are_rejected():
    with pytest.raises(FieldMismatch):
        x + AssocPoly.letter(0, XY, GF(5))
    with pytest.raises(AlphabetMismatch):
        x * AssocPoly.letter(0, Alphabet(("a", "b")))


@settings(max_examples=50)
@given(polys(), polys(), polys())
def test_mul_is_associative_and_unital(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert one * a == a == a * one


def test_exp_log_examples():
    assert exp_trunc(x, 3) == P("1 + x + 1/2*xx + 1/6*xxx")
    assert log_trunc(one + x, 2) == P("x - 1/2*xx")
    z = log_trunc(exp_trunc(x, 4) * exp_trunc(y, 4), 2)
    assert z == P("x + y + 1/2*xy - 1/2*yx")


@settings(max_examples=30)
@given(polys(maxlen=3, min_len=1))
def test_exp_log_inverse(a):
    assert log_trunc(exp_trunc(a, 5), 5) == a.truncate(5)


def test_exp_log_preconditions():
    with pytest.raises(ConstantTermViolation):
        exp_trunc(one + x, 3)
    with pytest.raises(ConstantTermViolation):
        log_trunc(x, 3)


def test_decompose_examples():
    assert decompose(P("xy - yx")) == (0, -y, x)
    assert decompose(P("xyx")) == (0, P("xy"), 0)
    assert decompose(P("1 + x")) == (1, one, 0)


@given(polys(maxlen=6))
def test_decompose_reconstructs(a):
    a0, a1, a2 = decompose(a)
    assert one.scale(a0) + a1 * x + a2 * y == a


def test_transpose_examples():
    assert transpose(P("xy")) == P("yx")
    assert transpose(P("xxy")) == P("-yxx")


@given(polys(), polys())
def test_transpose_is_an_anti_involution(a, b):
    assert transpose(transpose(a)) == a
    assert transpose(a * b) == transpose(b) * transpose(a)


def test_cyclic_trace_examples():
    assert cyclic_trace(P("yx")) == cyclic_trace(P("xy"))
    assert list(cyclic_trace(P("yx")).terms) == [(0, 1)]
    assert cyclic_trace(P("xy - yx")) == 0
    t = cyclic_trace(P("xxy + xyx + yxx"))
    assert t.terms == {(0, 0, 1): 3}
    with pytest.raises(NonzeroConstantTerm):
        cyclic_trace(one + x)


def test_quadratic_trace_examples():
    assert quadratic_trace(P("xy")).terms == {(0, 1): 1}
    assert quadratic_trace(P("xxy")) == 0
    assert quadratic_trace(x * x + y * y - (x + y) * (x + y)).terms == {(0, 1): -2}
    with pytest.raises(NonzeroConstantTerm):
        quadratic_trace(one)


def test_quad_canonical():
    assert quad_canonical((0, 0, 1)) == ((0, 0, 1), 0)
    # even length: the reversed orbit carries sign +1
    key, sign = quad_canonical((1, 1, 0, 1, 0, 0))
    assert sign == 1 and key == min(min_rotation((1, 1, 0, 1, 0, 0)), min_rotation((0, 0, 1, 0, 1, 1)))


@given(polys(min_len=1), polys(min_len=1))
def test_traces_kill_commutators(a, b):
    a, b = a - one.scale(a.constant_term()), b - one.scale(b.constant_term())
    assert cyclic_trace(a * b - b * a) == 0
    assert quadratic_trace(a * b - b * a) == 0


@given(polys(maxlen=5, min_len=1))
def test_quadratic_trace_factors_through_cyclic(a):
    a = a - one.scale(a.constant_term())
    rotated = AssocPoly({w[1:] + w[:1]: c for w, c in a.terms.items()}, XY, QQ)
    assert quadratic_trace(rotated) == quadratic_trace(a)
    assert quadratic_trace(transpose(a)) == quadratic_trace(a)


def test_text_and_json():
    a = P("1/2*xy - 1/2*yx")
    assert str(a) == "1/2*xy - 1/2*yx"
    assert AssocPoly.from_json(a.to_json()) == a
    assert a.coeff("yx") == Fraction(-1, 2)


def test_reduce_and_lift():
    a = P("1/2*xy + 3*yx")
    b = a.reduce_mod(5)
    assert b.field == GF(5) and b.coeff("xy") == 3
    assert b.lift().coeff("xy") == 3
