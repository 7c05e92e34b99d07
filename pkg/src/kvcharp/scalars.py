"""Exact scalars: rationals, residues mod p, valuations and Bernoulli numbers.

Rationals are :class:`fractions.Fraction`; they are always reduced, have a
positive denominator and represent zero as ``0/1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Union

from .errors import FieldMismatch, NegativeValuation, NotPrimeError

Rational = Fraction

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int, odd: bool = False) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p!r} is not a prime")
    if odd and p == 2:
        raise NotPrimeError("an odd prime is required")
    return p


class FpScalar:
    """Residue class mod an odd prime ``p``."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        self.residue = residue % p
        self.p = p

    def _other(self, other) -> Optional[int]:
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise FieldMismatch(f"cannot mix F_{self.p} and F_{other.p}")
            return other.residue
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch("cannot mix rationals and residues; reduce first")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpScalar(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpScalar(self.residue - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpScalar(o - self.residue, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpScalar(self.residue * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.residue, self.p)

    def inverse(self) -> "FpScalar":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.p}")
        return FpScalar(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * FpScalar(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FpScalar(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return (other - self.residue) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def signed(self) -> int:
        """Representative in (-p/2, p/2)."""
        r = self.residue
        return r - self.p if r > self.p // 2 else r

    def __repr__(self):
        return f"FpScalar({self.residue}, {self.p})"

    def __str__(self):
        return str(self.residue)


# Coefficient fields.  Polynomials carry one of these as their field tag.

@dataclass(frozen=True)
class RationalField:
    char: int = 0

    def __call__(self, c) -> Fraction:
        if isinstance(c, FpScalar):
            raise FieldMismatch("cannot lift a residue to a rational implicitly")
        return Fraction(c)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __str__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    char: int

    def __post_init__(self):
        require_prime(self.char, odd=True)

    def __call__(self, c) -> FpScalar:
        if isinstance(c, FpScalar):
            if c.p != self.char:
                raise FieldMismatch(f"cannot mix F_{c.p} and F_{self.char}")
            return c
        if isinstance(c, Fraction):
            return reduce_mod_p(c, self.char)
        return FpScalar(int(c), self.char)

    @property
    def zero(self):
        return FpScalar(0, self.char)

    @property
    def one(self):
        return FpScalar(1, self.char)

    def __str__(self):
        return f"GF({self.char})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def p_valuation(q, p: int) -> Union[int, float]:
    """Exponent of ``p`` in ``q``; ``INF`` for zero."""
    require_prime(p)
    q = Fraction(q)
    if q == 0:
        return INF
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def reduce_mod_p(q, p: int) -> FpScalar:
    q = Fraction(q)
    if p_valuation(q, p) < 0:
        raise NegativeValuation(f"{q} has negative {p}-adic valuation")
    return FpScalar(q.numerator * pow(q.denominator, -1, p), p)


@lru_cache(maxsize=None)
def _bernoulli_minus(m: int) -> Fraction:
    # classical convention B_1 = -1/2, from sum_{k<=m} C(m+1, k) B_k = 0
    if m == 0:
        return Fraction(1)
    total = sum(math.comb(m + 1, k) * _bernoulli_minus(k) for k in range(m))
    return -total / (m + 1)


def bernoulli(m: int) -> Fraction:
    """Bernoulli number with the convention t/(1 - e^{-t}) = sum B_m t^m / m!."""
    if m < 0:
        raise ValueError("m must be non-negative")
    for k in range(m):  # fill the cache bottom-up; keeps recursion shallow
        _bernoulli_minus(k)
    b = _bernoulli_minus(m)
    return -b if m == 1 else b


class StaudtReport(NamedTuple):
    p: int
    m: int
    divides: bool
    p_integral: bool
    residue_if_divides: Optional[FpScalar]

    @property
    def holds(self) -> bool:
        if not self.divides:
            return self.p_integral
        return self.p_integral and self.residue_if_divides == self.p - 1


def staudt_check(p: int, m: int) -> StaudtReport:
    require_prime(p, odd=True)
    if m < 2 or m % 2:
        raise ValueError("m must be even and at least 2")
    b = bernoulli(m)
    if m % (p - 1):
        return StaudtReport(p, m, False, p_valuation(b, p) >= 0, None)
    pb = p * b
    integral = p_valuation(pb, p) >= 0
    return StaudtReport(p, m, True, integral, reduce_mod_p(pb, p) if integral else None)


def wilson_check(p: int) -> bool:
    require_prime(p)
    return (math.factorial(p - 1) + 1) % p == 0


def rational_to_json(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def scalar_to_json(c) -> dict:
    if isinstance(c, FpScalar):
        return {"residue": str(c.residue), "modulus": str(c.p)}
    return rational_to_json(c)


def scalar_from_json(d: dict):
    if "modulus" in d:
        return FpScalar(int(d["residue"]), int(d["modulus"]))
    return rational_from_json(d)


def field_of(c):
    return GF(c.p) if isinstance(c, FpScalar) else QQ
