import math
from fractions import Fraction

import pytest

from kvcharp.chvergne import (INF, LieSeries, OperatorSeries, VergneSolution, apply_ad_series,
                              ch_oracle, ch_series, check_kv, extract_AB, grading_inverse_shift,
                              grading_shift, identity_series, named_series, valuation_profile,
                              vergne_FG, vergne_solution, vergne_UV)
from kvcharp.charp import check_eq4, check_eq5, known_solution
from kvcharp.errors import ValuationViolation
from kvcharp.lie import LiePoly, is_lie_dynkin, substitute
from kvcharp.notation import parse_lie
from kvcharp.scalars import GF

x, y = LiePoly.gens()
F = Fraction


def S(u, N):
    return LieSeries.from_lie(u, N)


def test_theta():
    th = named_series("theta", 6)
    assert list(th.coeffs[:4]) == [1, F(-1, 2), F(1, 6), F(-1, 24)]
    assert all(th[n] == F((-1) ** n, math.factorial(n + 1)) for n in range(7))


def test_theta_inverse():
    inv = named_series("theta_inv", 8)
    assert list(inv.coeffs[:5]) == [1, F(1, 2), F(1, 12), 0, F(-1, 720)]
    assert named_series("theta", 8) * inv == identity_series(8)
    assert named_series("theta_minus", 8) * named_series("theta_minus_inv", 8) == identity_series(8)


def test_r():
    r = named_series("r", 9)
    assert r[1] == F(1, 3) and r[3] == F(1, 60)
    assert all(r[k] == 0 for k in range(0, 10, 2))


def test_unknown_series():
    with pytest.raises(KeyError):
        named_series("sinh", 3)


def test_operator_series_algebra():
    a = OperatorSeries([1, 2, 3])
    assert (a * a.inverse()) == identity_series(2)
    assert a.reflect().coeffs == (1, -2, 3)
    assert (a - a).coeffs == (0, 0, 0)


def _z3_by_hand():
    # degree-3 part of log(e^x e^y): (1/12)([x,[x,y]] + [y,[y,x]])
    return (x.bracket(x.bracket(y)) + y.bracket(y.bracket(x))).scale(F(1, 12))


def test_ch_low_degrees():
    z = ch_series(3)
    assert z[1] == x + y
    assert z[2] == x.bracket(y).scale(F(1, 2))
    assert z[3] == _z3_by_hand()
    assert ch_oracle(1)[1] == x + y


@pytest.mark.parametrize("N", range(1, 9))
def test_ch_matches_oracle(N):
    assert ch_series(N) == ch_oracle(N)


def test_ch_rejects_zero_degree():
    with pytest.raises(ValueError):
        ch_series(0)


def test_apply_ad_series_example():
    out = apply_ad_series(named_series("theta", 3), -x, S(y, 3), 3)
    assert out.total() == y + x.bracket(y).scale(F(1, 2)) + x.bracket(x.bracket(y)).scale(F(1, 6))


def test_identity_series_is_identity():
    w = S(parse_lie("[x,y] + y"), 4)
    assert apply_ad_series(identity_series(4), x + y, w, 4) == w


def test_r_of_ad_z_kills_the_leading_term():
    # the lowest term of R(ad z)(x+y) is (1/3)[z1,x+y] = 0
    z = ch_series(4)
    out = apply_ad_series(named_series("r", 4), z, S(x + y, 4), 4)
    assert out[2] == 0


def test_grading_operator():
    s = S(x.bracket(y) + x, 3)
    inv = grading_inverse_shift(s)
    assert inv[2] == x.bracket(y).scale(F(1, 3))
    assert inv[1] == x.scale(F(1, 2))
    assert grading_shift(inv) == s


def test_u_and_v_low_degree():
    U, V = vergne_UV(4)
    assert U[1] == y.scale(F(1, 4))
    assert V[1] == x.scale(F(-1, 4))


@pytest.mark.parametrize("N", [4, 6])
def test_u_v_f_g_mirror_symmetry(N):
    # V(x,y) = U(-y,-x) and G(x,y) = F(-y,-x)
    sol = vergne_solution(N)
    for k in range(1, N + 1):
        assert sol.V[k] == substitute(sol.U[k], [-y, -x])
        assert sol.G[k] == substitute(sol.F[k], [-y, -x])


def test_f_low_degree_fixed_by_first_kv_equation():
    Fs, Gs = vergne_FG(3)
    assert Fs[1] == y.scale(F(-1, 4))
    assert Gs[1] == x.scale(F(1, 4))
    assert Fs[2] == x.bracket(y).scale(F(1, 24))
    assert Gs[2] == x.bracket(y).scale(F(-1, 24))


def test_components_are_lie_elements():
    sol = vergne_solution(6)
    for s in (sol.z, sol.U, sol.V, sol.F, sol.G):
        for k in s.degrees():
            assert is_lie_dynkin(s[k].tau())


@pytest.mark.parametrize("N", range(2, 9))
def test_kv_equations_hold(N):
    rep = check_kv(*vergne_FG(N), N)
    assert rep.eq2_pass and rep.eq3_pass and rep.passed


def test_zero_candidate_fails_kv():
    zero = LieSeries({}, 2)
    rep = check_kv(zero, zero, 2)
    assert rep.eq2_residual_by_degree[1] == 0
    assert rep.eq2_residual_by_degree[2] == x.bracket(y).scale(F(-1, 2))
    assert not rep.eq2_pass


def test_cyclic_trace_status_is_reported():
    rep = check_kv(*vergne_FG(6), 6)
    assert set(rep.eq3_cyclic_residual_by_degree) == set(range(1, 7))
    # low degrees agree in both quotients
    assert all(not rep.eq3_cyclic_residual_by_degree[k] for k in range(1, 5))


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_valuation_profile_of_f(p):
    sol = vergne_solution(p - 1)
    for name in ("F", "G"):
        prof = valuation_profile(getattr(sol, name), p)
        assert all(prof[k] >= 0 for k in range(1, p - 1))
        assert prof[p - 1] == -1


def test_valuation_profile_small_cases():
    prof = valuation_profile(ch_series(3), 3)
    assert prof[3] == -1 and prof[1] == 0
    assert valuation_profile(S(x + y, 1), 5)[1] == 0
    assert valuation_profile(LieSeries({}, 2), 5)[2] == INF
    assert valuation_profile(ch_series(2), 3).to_json() == [
        {"degree": 1, "min_valuation": 0}, {"degree": 2, "min_valuation": 0}]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_extracted_pair_solves_both_equations(p):
    A, B = extract_AB(p)
    assert A.field == GF(p) and A.degrees() == [p - 1]
    assert check_eq4(A, B, p)
    assert check_eq5(A, B, p)


def test_extracted_pair_versus_closed_forms():
    A3, B3 = extract_AB(3)
    assert (A3, B3) == known_solution(3)[:2]
    A5, B5 = extract_AB(5)
    pa, pb, _ = known_solution(5)
    assert (A5, B5) == (-pa, -pb)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_extracted_pair_is_symmetric(p):
    A, B = extract_AB(p)
    xf, yf = LiePoly.gens(A.alphabet, A.field)
    assert B == substitute(A, [yf, xf])


def test_valuation_violation_is_fatal():
    sol = vergne_solution(2)
    bad = LieSeries.from_lie(x.bracket(y).scale(F(1, 9)), 2)
    fake = VergneSolution(2, sol.z, sol.U, sol.V, bad, sol.G)
    with pytest.raises(ValuationViolation):
        extract_AB(3, fake)


def test_solution_json():
    d = vergne_solution(4).to_json(5)
    assert d["N"] == 4 and d["prime"] == 5
    assert d["valuation_profile"]["F"][-1] == {"degree": 4, "min_valuation": -1}
    assert {"U", "V", "F", "G"} <= set(d)
