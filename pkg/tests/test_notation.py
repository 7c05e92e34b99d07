from fractions import Fraction

import pytest

from kvcharp.errors import ParseError
from kvcharp.grt import V_ALPHABET
from kvcharp.lie import LiePoly
from kvcharp.notation import parse_assoc, parse_lie
from kvcharp.scalars import GF
from kvcharp.words import AssocPoly

x, y = LiePoly.gens()


def test_lie_expressions():
    assert parse_lie("[x,y]") == x.bracket(y)
    assert parse_lie("[y,x]") == -x.bracket(y)
    assert parse_lie("2*[x,[x,y]] - 1/3*[[x,y],y]") == (
        x.bracket(x.bracket(y)).scale(2) - x.bracket(y).bracket(y).scale(Fraction(1, 3)))
    assert parse_lie("[y,-x-y]") == x.bracket(y)
    assert parse_lie("2[x,y]") == parse_lie("2*[x,y]")
    assert parse_lie("−[x,y]") == parse_lie("-[x,y]")
    assert parse_lie("0") == 0


def test_coefficients_reduce_into_the_field():
    u = parse_lie("1/2*[x,y]", field=GF(5))
    assert u.coeff((0, 1)) == 3


def test_other_alphabets():
    u = parse_lie("[t14,t24] + [t34,t14]", V_ALPHABET)
    assert u.alphabet == V_ALPHABET
    assert len(u.terms) == 2


def test_assoc_expressions():
    a = parse_assoc("1 + 2*xy - 1/2*yx")
    x_, y_ = AssocPoly.gens()
    assert a == AssocPoly.one() + (x_ * y_).scale(2) - (y_ * x_).scale(Fraction(1, 2))
    assert parse_assoc("(x + y)") == x_ + y_


@pytest.mark.parametrize("text", ["[x,", "q", "[x,y] +", "1/0*x", "3", "[x y]", "xy"])
def test_bad_lie_input(text):
    with pytest.raises(ParseError):
        parse_lie(text)


def test_str_round_trip():
    for text in ["2*[x,[x,[x,y]]] + 2*[[[x,y],y],y] + 3*[[x,[x,y]],y]", "-[x,y]", "1/2*[x,y]"]:
        u = parse_lie(text)
        assert parse_lie(str(u)) == u
