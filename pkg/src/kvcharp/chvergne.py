"""Campbell-Hausdorff series and Vergne's rational Kashiwara-Vergne solution.

Series in ``ad`` are applied in the associative algebra (``ad u`` acts as
the commutator with ``tau(u)``) and the results are converted back to the
Lyndon basis degree by degree.  The conversion doubles as a certificate that
every component is a Lie element.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from .errors import ValuationViolation
from .lie import LiePoly, LieSeries, lie_from_assoc
from .scalars import GF, INF, QQ, p_valuation, reduce_mod_p, require_prime
from .words import (XY, X, Y, AssocPoly, QuadTraceElement, TraceElement,
                    cyclic_trace, d_x, d_y, exp_trunc, log_trunc,
                    quadratic_trace)


class OperatorSeries:
    """Truncated formal power series in one variable with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs: Tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: "OperatorSeries") -> "OperatorSeries":
        n = min(self.N, other.N)
        return OperatorSeries([self[k] + other[k] for k in range(n + 1)])

    def __sub__(self, other: "OperatorSeries") -> "OperatorSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "OperatorSeries":
        return OperatorSeries([c * a for a in self.coeffs])

    def __mul__(self, other: "OperatorSeries") -> "OperatorSeries":
        n = min(self.N, other.N)
        return OperatorSeries([sum(self[i] * other[k - i] for i in range(k + 1)) for k in range(n + 1)])

    def inverse(self) -> "OperatorSeries":
        if self[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv = [1 / self[0]]
        for k in range(1, self.N + 1):
            inv.append(-sum(self[i] * inv[k - i] for i in range(1, k + 1)) / self[0])
        return OperatorSeries(inv)

    def reflect(self) -> "OperatorSeries":
        """``f(t) -> f(-t)``."""
        return OperatorSeries([(-1) ** k * c for k, c in enumerate(self.coeffs)])

    def __eq__(self, other):
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        n = min(self.N, other.N)
        return all(self[k] == other[k] for k in range(n + 1))

    def __repr__(self):
        return f"OperatorSeries({[str(c) for c in self.coeffs]})"


def identity_series(N: int) -> OperatorSeries:
    return OperatorSeries([1] + [0] * N)


def exp_series(N: int) -> OperatorSeries:
    return OperatorSeries([Fraction(1, math.factorial(k)) for k in range(N + 1)])


def named_series(name: str, N: int) -> OperatorSeries:
    """``theta`` is (1 - e^-t)/t, ``r`` is (e^t - e^-t - 2t)/t^2; ``_minus`` means t -> -t."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if name == "theta":
        return OperatorSeries([Fraction((-1) ** n, math.factorial(n + 1)) for n in range(N + 1)])
    if name == "theta_inv":
        return named_series("theta", N).inverse()
    if name == "theta_minus":
        return named_series("theta", N).reflect()
    if name == "theta_minus_inv":
        return named_series("theta_minus", N).inverse()
    if name == "r":
        # t^(k-2) coefficient is 2/k! for odd k >= 3
        return OperatorSeries([Fraction(2, math.factorial(n + 2)) if n % 2 else 0 for n in range(N + 1)])
    raise KeyError(f"unknown series {name!r}")


# ---------------------------------------------------------------------------
# Campbell-Hausdorff series

def _compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _ch_terms(n: int) -> Iterator[Tuple[Tuple[int, ...], Fraction]]:
    """Words and coefficients of the degree-n double sum over (i_m, j_m), i_m + j_m > 0."""
    blocks = {s: [((X,) * i + (Y,) * (s - i), Fraction(1, math.factorial(i) * math.factorial(s - i)))
                  for i in range(s + 1)] for s in range(1, n + 1)}
    for k in range(1, n + 1):
        sign = Fraction((-1) ** (k - 1), k)
        for comp in _compositions(n, k):
            stack = [((), sign)]
            for s in comp:
                stack = [(w + bw, c * bc) for w, c in stack for bw, bc in blocks[s]]
            yield from stack


def ch_degree(n: int) -> AssocPoly:
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for w, c in _ch_terms(n):
        acc[w] = acc.get(w, 0) + c
    return AssocPoly(acc, XY, QQ)


@lru_cache(maxsize=None)
def ch_series(N: int) -> LieSeries:
    if N < 1:
        raise ValueError("N must be at least 1")
    return LieSeries({n: lie_from_assoc(ch_degree(n)) for n in range(1, N + 1)}, N)


def ch_oracle(N: int) -> LieSeries:
    if N < 1:
        raise ValueError("N must be at least 1")
    x, y = AssocPoly.gens()
    z = log_trunc(exp_trunc(x, N).mul(exp_trunc(y, N), N), N)
    return LieSeries.from_assoc(z, N)


# ---------------------------------------------------------------------------
# operator series in ad

def ad_series_assoc(phi: OperatorSeries, u: AssocPoly, w: AssocPoly, N: int) -> AssocPoly:
    """sum_k phi_k (ad u)^k w in the associative algebra, truncated at degree N."""
    if u.constant_term():
        raise ValueError("ad u needs u without constant term")
    w = w.truncate(N)
    acc = w.scale(phi[0])
    cur = w
    for k in range(1, N + 1):
        cur = u.commutator(cur, N)
        if not cur:
            break
        if phi[k]:
            acc = acc + cur.scale(phi[k])
    return acc


def _as_assoc(s) -> AssocPoly:
    if isinstance(s, AssocPoly):
        return s
    return s.tau()


def apply_ad_series(phi: OperatorSeries, u, w, N: int) -> LieSeries:
    u, w = _as_assoc(u), _as_assoc(w)
    return LieSeries.from_assoc(ad_series_assoc(phi, u, w, N), N)


def grading_shift(s: LieSeries) -> LieSeries:
    """Apply (R + 1) with R the degree operator."""
    return LieSeries({k: c.scale(k + 1) for k, c in s.components.items()}, s.N, s.alphabet, s.field)


def grading_inverse_shift(s: LieSeries) -> LieSeries:
    """Apply (R + 1)^-1: the degree-n part is divided by n + 1."""
    return LieSeries({k: c.scale(Fraction(1, k + 1)) for k, c in s.components.items()},
                     s.N, s.alphabet, s.field)


# ---------------------------------------------------------------------------
# Vergne's solution

@dataclass(frozen=True)
class VergneSolution:
    N: int
    z: LieSeries
    U: LieSeries
    V: LieSeries
    F: LieSeries
    G: LieSeries

    def to_json(self, p: int = None) -> dict:
        out = {"N": self.N}
        for name in ("U", "V", "F", "G"):
            out[name] = getattr(self, name).to_json()
        if p is not None:
            out["prime"] = p
            out["valuation_profile"] = {
                name: valuation_profile(getattr(self, name), p).to_json() for name in ("F", "G")}
        return out


@lru_cache(maxsize=None)
def vergne_solution(N: int) -> VergneSolution:
    if N < 1:
        raise ValueError("N must be at least 1")
    x, y = AssocPoly.gens()
    z_series = ch_series(N)
    z = z_series.tau()
    theta = named_series("theta", N)
    theta_inv = named_series("theta_inv", N)
    r = named_series("r", N)
    half = Fraction(1, 2)

    # Theta(-ad z)^-1 x + Theta(ad z)^-1 y
    s = ad_series_assoc(theta_inv, -z, x, N) + ad_series_assoc(theta_inv, z, y, N)
    # Theta(ad z)^-1 R(ad z) and Theta(-ad z)^-1 R(ad z)
    t_u = ad_series_assoc(theta_inv * r, z, s, N)
    t_v = ad_series_assoc(named_series("theta_minus_inv", N) * r, z, s, N)

    rhs_u = (ad_series_assoc(theta, x, t_u, N).scale(-half)
             + ad_series_assoc(theta, -x, y, N).scale(half))
    rhs_v = (ad_series_assoc(theta, -y, t_v, N).scale(-half)
             - ad_series_assoc(theta, y, x, N).scale(half))

    U = grading_inverse_shift(LieSeries.from_assoc(rhs_u, N))
    V = grading_inverse_shift(LieSeries.from_assoc(rhs_v, N))
    F = -apply_ad_series(theta_inv, -x, U, N)
    G = -apply_ad_series(theta_inv, y, V, N)
    return VergneSolution(N, z_series, U, V, F, G)


def vergne_UV(N: int) -> Tuple[LieSeries, LieSeries]:
    sol = vergne_solution(N)
    return sol.U, sol.V


def vergne_FG(N: int) -> Tuple[LieSeries, LieSeries]:
    sol = vergne_solution(N)
    return sol.F, sol.G


# ---------------------------------------------------------------------------
# Kashiwara-Vergne equations

@dataclass
class KVReport:
    N: int
    eq2_residual_by_degree: Dict[int, LiePoly]
    eq3_residual_by_degree: Dict[int, QuadTraceElement]
    eq3_cyclic_residual_by_degree: Dict[int, TraceElement] = field(default_factory=dict)

    @property
    def eq2_pass(self) -> bool:
        return all(not r for r in self.eq2_residual_by_degree.values())

    @property
    def eq3_pass(self) -> bool:
        return all(not r for r in self.eq3_residual_by_degree.values())

    @property
    def eq3_cyclic_pass(self) -> bool:
        """Informational: the same identity in the cyclic-word quotient only."""
        return all(not r for r in self.eq3_cyclic_residual_by_degree.values())

    @property
    def passed(self) -> bool:
        return self.eq2_pass and self.eq3_pass


def kv_trace_rhs(N: int, z: AssocPoly = None) -> AssocPoly:
    """x/(e^x-1) + y/(e^y-1) - z/(e^z-1) - 1, truncated at degree N, halved."""
    x, y = AssocPoly.gens()
    if z is None:
        z = ch_series(N).tau()
    b = named_series("theta_minus_inv", N)  # t/(e^t - 1) = 1/Theta(-t)
    acc = x._like({})
    zk = AssocPoly.one()
    for k in range(1, N + 1):
        zk = zk.mul(z, N)
        acc = acc + (x.power(k) + y.power(k) - zk).scale(b[k])
    return acc.scale(Fraction(1, 2))


def check_kv(F: LieSeries, G: LieSeries, N: int) -> KVReport:
    if N < 2:
        raise ValueError("N must be at least 2")
    x, y = AssocPoly.gens()
    z = ch_series(N).tau()
    fa, ga = F.truncate(N).tau(), G.truncate(N).tau()

    lhs2 = (ad_series_assoc(exp_series(N) - identity_series(N), x, fa, N)
            + ad_series_assoc(identity_series(N) - exp_series(N).reflect(), y, ga, N))
    res2 = (x + y - z - lhs2).truncate(N)
    eq2 = {n: lie_from_assoc(res2.homogeneous(n)) for n in range(1, N + 1)}

    lhs3 = x.mul(d_x(fa)) + y.mul(d_y(ga))
    rhs3 = kv_trace_rhs(N, z)
    diff = (lhs3 - rhs3).truncate(N)
    eq3 = {n: quadratic_trace(diff.homogeneous(n)) for n in range(1, N + 1)}
    eq3c = {n: cyclic_trace(diff.homogeneous(n)) for n in range(1, N + 1)}
    return KVReport(N, eq2, eq3, eq3c)


# ---------------------------------------------------------------------------
# p-adic behaviour

@dataclass(frozen=True)
class ValuationProfile:
    p: int
    by_degree: Dict[int, Union[int, float]]

    def __getitem__(self, k):
        return self.by_degree[k]

    def to_json(self) -> List[dict]:
        return [{"degree": k, "min_valuation": (None if v == INF else v)}
                for k, v in sorted(self.by_degree.items())]


def valuation_profile(s: LieSeries, p: int) -> ValuationProfile:
    require_prime(p)
    if s.field != QQ:
        raise ValueError("valuations are taken over the rationals")
    prof = {k: min((p_valuation(c, p) for c in s[k].terms.values()), default=INF)
            for k in range(1, s.N + 1)}
    return ValuationProfile(p, prof)


def extract_AB(p: int, solution: VergneSolution = None) -> Tuple[LiePoly, LiePoly]:
    """Residues mod p of p * F_{p-1} and p * G_{p-1}."""
    require_prime(p, odd=True)
    if solution is None:
        solution = vergne_solution(p - 1)
    out = []
    for name in ("F", "G"):
        comp = getattr(solution, name)[p - 1]
        worst = min((p_valuation(c, p) for c in comp.terms.values()), default=INF)
        if worst < -1:
            raise ValuationViolation(
                f"degree {p - 1} part of {name} has a coefficient with {p}-adic valuation {worst}")
        out.append(LiePoly({w: reduce_mod_p(p * c, p) for w, c in comp.terms.items()},
                           comp.alphabet, GF(p)))
    return out[0], out[1]
