"""Characteristic-p layer: Jacobson element, the two mod-p equations, psi and depth."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import DegreeMismatch
from .lie import LiePoly, depth, lie_from_assoc, substitute
from .notation import parse_lie
from .scalars import GF, FpScalar, require_prime
from .words import XY, AssocPoly, cyclic_trace, d_x, d_y, quadratic_trace

# Closed-form solutions known for small primes: (A, B, psi) as bracket text.
KNOWN_SOLUTIONS = {
    3: ("-[x,y]", "[x,y]", "-[x,y]"),
    5: ("[x,[x,[x,y]]] + [y,[x,[x,y]]] + 2*[y,[y,[x,y]]]",
        "[y,[y,[y,x]]] + [x,[y,[y,x]]] + 2*[x,[x,[y,x]]]",
        "2*[x,[x,[x,y]]] + 2*[y,[y,[x,y]]] + 3*[y,[x,[x,y]]]"),
}


def known_solution(p: int):
    """Return ``(A, B, psi)`` over GF(p) for the tabulated primes."""
    if p not in KNOWN_SOLUTIONS:
        raise KeyError(f"no tabulated solution for p={p}")
    return tuple(parse_lie(t, XY, GF(p)) for t in KNOWN_SOLUTIONS[p])


def _jacobson_assoc(p: int) -> AssocPoly:
    x, y = AssocPoly.gens(XY, GF(p))
    return x.power(p) + y.power(p) - (x + y).power(p)


def jacobson(p: int) -> LiePoly:
    """x^p + y^p - (x+y)^p as a Lie polynomial over GF(p)."""
    require_prime(p, odd=True)
    return lie_from_assoc(_jacobson_assoc(p))


def _require_degree(u: LiePoly, n: int, name: str):
    if u.terms and u.degrees() != [n]:
        raise DegreeMismatch(f"{name} must be homogeneous of degree {n}")


def check_eq4(A: LiePoly, B: LiePoly, p: int) -> bool:
    """[x, A] + [y, B] == x^p + y^p - (x+y)^p, compared word by word."""
    _require_degree(A, p - 1, "A")
    _require_degree(B, p - 1, "B")
    x, y = AssocPoly.gens(XY, GF(p))
    lhs = x.commutator(A.tau()) + y.commutator(B.tau())
    return lhs == _jacobson_assoc(p)


def eq5_sides(A: LiePoly, B: LiePoly, p: int):
    """Associative left and right sides of the trace equation before projection."""
    _require_degree(A, p - 1, "A")
    _require_degree(B, p - 1, "B")
    F = GF(p)
    x, y = AssocPoly.gens(XY, F)
    lhs = x.mul(d_x(A.tau())) + y.mul(d_y(B.tau()))
    rhs = (x.power(p - 1) + y.power(p - 1) - (x + y).power(p - 1)).scale(F(2).inverse())
    return lhs, rhs


def check_eq5(A: LiePoly, B: LiePoly, p: int, cyclic: bool = False) -> bool:
    """Trace equation in the quadratic quotient (or, with ``cyclic``, cyclic words only)."""
    lhs, rhs = eq5_sides(A, B, p)
    tr = cyclic_trace if cyclic else quadratic_trace
    return tr(lhs) == tr(rhs)


def build_psi(A: LiePoly) -> LiePoly:
    """psi(x, y) = A(y, -x-y), so that psi(-x-y, x) = A(x, y)."""
    x, y = LiePoly.gens(A.alphabet, A.field)
    return substitute(A, [y, -x - y])


def psi_to_AB(psi: LiePoly):
    """Recover ``A(x,y) = psi(-x-y, x)`` and ``B(x,y) = psi(-x-y, y)``."""
    x, y = LiePoly.gens(psi.alphabet, psi.field)
    return substitute(psi, [-x - y, x]), substitute(psi, [-x - y, y])


def ad_y_power_x(k: int, field) -> LiePoly:
    x, y = LiePoly.gens(XY, field)
    out = x
    for _ in range(k):
        out = y.bracket(out)
    return out


@dataclass(frozen=True)
class DepthReport:
    depth: Union[int, float]
    c: FpScalar

    @property
    def holds(self) -> bool:
        return self.depth == 1 and bool(self.c)


def depth_lemma_check(psi: LiePoly, p: int) -> DepthReport:
    """Depth of psi and the coefficient c of ad_y^(p-2) x in A(x,y) = psi(-x-y, x)."""
    require_prime(p, odd=True)
    _require_degree(psi, p - 1, "psi")
    A, _ = psi_to_AB(psi)
    # bidegree (1, p-2) is spanned by the single Lyndon word x y^(p-2)
    word = (0,) + (1,) * (p - 2)
    basis = ad_y_power_x(p - 2, psi.field)
    c = A.coeff(word) / basis.coeff(word)
    return DepthReport(depth(psi), c)


@dataclass
class ConjectureReport:
    p: int
    A: LiePoly
    B: LiePoly
    eq4_pass: bool
    eq5_pass: bool
    eq5_tilde_status: bool
    psi: LiePoly
    depth_of_psi: Union[int, float]
    leading_c: FpScalar

    @property
    def passed(self) -> bool:
        return self.eq4_pass and self.eq5_pass

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "A": str(self.A),
            "B": str(self.B),
            "eq4_pass": self.eq4_pass,
            "eq5_pass": self.eq5_pass,
            "eq5_tilde_status": self.eq5_tilde_status,
            "psi": str(self.psi),
            "depth_of_psi": None if self.depth_of_psi == float("inf") else self.depth_of_psi,
            "leading_c": self.leading_c.residue,
        }


def conjecture_report(p: int, A: LiePoly, B: LiePoly, psi: Optional[LiePoly] = None) -> ConjectureReport:
    if psi is None:
        psi = build_psi(A)
    d = depth_lemma_check(psi, p)
    return ConjectureReport(p, A, B, check_eq4(A, B, p), check_eq5(A, B, p),
                            check_eq5(A, B, p, cyclic=True), psi, d.depth, d.c)
