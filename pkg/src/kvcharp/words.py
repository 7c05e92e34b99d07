"""Free associative algebra on a small ordered alphabet.

Words are tuples of letter indices, so Python tuple comparison is the
lexicographic order induced by the alphabet order (a proper prefix sorts
first).  Polynomials are sparse maps word -> coefficient tagged with an
alphabet and a coefficient field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .errors import (AlphabetMismatch, ConstantTermViolation, FieldMismatch,
                     NonzeroConstantTerm)
from .scalars import QQ, FpScalar, scalar_from_json, scalar_to_json

Word = Tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    letters: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("duplicate letters")
        if not 1 <= len(self.letters) <= 8:
            raise ValueError("alphabets of 1 to 8 letters are supported")

    def __len__(self):
        return len(self.letters)

    def index(self, name: str) -> int:
        return self.letters.index(name)

    def render(self, word: Word) -> str:
        if not word:
            return "1"
        return "".join(self.letters[i] for i in word)


XY = Alphabet(("x", "y"))
X, Y = 0, 1


def rotations(word: Word):
    return [word[i:] + word[:i] for i in range(len(word))] or [word]


def min_rotation(word: Word) -> Word:
    return min(rotations(word))


def _fmt_coeff(c) -> str:
    if isinstance(c, FpScalar):
        return str(c.residue)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _is_negative(c) -> bool:
    return not isinstance(c, FpScalar) and c < 0


def format_terms(items: Iterable[Tuple[object, str]]) -> str:
    """Render ``(coeff, monomial_text)`` pairs as ``1/2*xy - 1/2*yx``."""
    out = []
    for c, mono in items:
        neg = _is_negative(c)
        a = -c if neg else c
        body = mono if a == 1 and mono != "1" else (
            _fmt_coeff(a) if mono == "1" else f"{_fmt_coeff(a)}*{mono}")
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) or "0"


def _plain(terms, field) -> dict:
    """Coefficients as bare ints (mod p) or Fractions, for tight loops."""
    if field.char:
        return {w: c.residue for w, c in terms.items()}
    return dict(terms)


def _wrap(d: dict, field) -> dict:
    """Inverse of :func:`_plain`, dropping zeros."""
    p = field.char
    if p:
        return {w: FpScalar(c, p) for w, c in d.items() if c % p}
    return {w: c for w, c in d.items() if c}


class _SparseBase:
    """Shared linear structure for word-indexed sparse vectors."""

    __slots__ = ("terms", "alphabet", "field")

    def __init__(self, terms=None, alphabet: Alphabet = XY, field=QQ):
        self.alphabet = alphabet
        self.field = field
        clean = {}
        if terms:
            for w, c in terms.items():
                c = field(c)
                if c:
                    clean[tuple(w)] = c
        self.terms: Dict[Word, object] = clean

    def _like(self, terms):
        return type(self)._raw(terms, self.alphabet, self.field)

    @classmethod
    def _raw(cls, terms, alphabet, field):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.alphabet = alphabet
        obj.field = field
        return obj

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} and {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.letters} vs {other.alphabet.letters}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        if not isinstance(other, _SparseBase) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        if not c:
            return self._like({})
        return self._like({w: c * v for w, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, FpScalar)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.alphabet))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word):
        if isinstance(word, str):
            word = parse_word(word, self.alphabet)
        return self.terms.get(tuple(word), self.field.zero)

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def homogeneous(self, n: int):
        return self._like({w: c for w, c in self.terms.items() if len(w) == n})

    def truncate(self, n: int):
        return self._like({w: c for w, c in self.terms.items() if len(w) <= n})

    def reduce_mod(self, p: int):
        from .scalars import GF
        if self.field != QQ:
            raise FieldMismatch("only rational polynomials can be reduced")
        return type(self)(self.terms, self.alphabet, GF(p))

    def lift(self):
        """Integer lift (residues in [0, p)) of a polynomial over GF(p)."""
        if self.field == QQ:
            return self
        return type(self)({w: c.residue for w, c in self.terms.items()}, self.alphabet, QQ)

    def _render_word(self, w):
        return self.alphabet.render(w)

    def __str__(self):
        return format_terms((self.terms[w], self._render_word(w)) for w in sorted(self.terms, key=lambda w: (len(w), w)))

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r}, {self.field})"

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "terms": [{"word": self.alphabet.render(w), "coeff": scalar_to_json(self.terms[w])}
                      for w in sorted(self.terms, key=lambda w: (len(w), w))],
        }

    @classmethod
    def from_json(cls, d: dict, field=QQ):
        alphabet = Alphabet(tuple(d.get("alphabet", XY.letters)))
        terms = {}
        for t in d["terms"]:
            c = scalar_from_json(t["coeff"])
            if isinstance(c, FpScalar):
                from .scalars import GF
                field = GF(c.p)
            terms[parse_word(t["word"], alphabet)] = c
        return cls(terms, alphabet, field)


class AssocPoly(_SparseBase):
    """Element of the free associative algebra (no implicit truncation)."""

    __slots__ = ()

    @classmethod
    def one(cls, alphabet: Alphabet = XY, field=QQ):
        return cls({(): 1}, alphabet, field)

    @classmethod
    def letter(cls, name, alphabet: Alphabet = XY, field=QQ):
        i = alphabet.index(name) if isinstance(name, str) else name
        return cls({(i,): 1}, alphabet, field)

    @classmethod
    def gens(cls, alphabet: Alphabet = XY, field=QQ):
        return tuple(cls.letter(i, alphabet, field) for i in range(len(alphabet)))

    def constant_term(self):
        return self.terms.get((), self.field.zero)

    def mul(self, other: "AssocPoly", maxdeg: Optional[int] = None) -> "AssocPoly":
        self._check(other)
        # bucket the right factor by degree so truncated pairs are never visited
        by_len: Dict[int, list] = {}
        for v, b in _plain(other.terms, other.field).items():
            by_len.setdefault(len(v), []).append((v, b))
        lens = sorted(by_len)
        out: Dict[Word, object] = {}
        for u, a in _plain(self.terms, self.field).items():
            room = None if maxdeg is None else maxdeg - len(u)
            for n in lens:
                if room is not None and n > room:
                    break
                for v, b in by_len[n]:
                    w = u + v
                    out[w] = out.get(w, 0) + a * b
        return self._like(_wrap(out, self.field))

    def __mul__(self, other):
        if isinstance(other, AssocPoly):
            return self.mul(other)
        if isinstance(other, (int, Fraction, FpScalar)):
            return self.scale(other)
        return NotImplemented

    def commutator(self, other: "AssocPoly", maxdeg: Optional[int] = None) -> "AssocPoly":
        return self.mul(other, maxdeg) - other.mul(self, maxdeg)

    def power(self, k: int, maxdeg: Optional[int] = None) -> "AssocPoly":
        out = AssocPoly.one(self.alphabet, self.field)
        for _ in range(k):
            out = out.mul(self, maxdeg)
        return out

    def __pow__(self, k: int):
        return self.power(k)

    def substitute(self, images) -> "AssocPoly":
        """Algebra homomorphism sending letter i to ``images[i]``."""
        images = list(images)
        target = images[0]
        out = target._like({})
        cache: Dict[Word, AssocPoly] = {(): AssocPoly.one(target.alphabet, target.field)}
        for w, c in self.terms.items():
            if w not in cache:
                acc = cache[()]
                for i in w:
                    acc = acc * images[i]
                cache[w] = acc
            out = out + cache[w].scale(c)
        return out


def assoc_mul(a: AssocPoly, b: AssocPoly, maxdeg: Optional[int] = None) -> AssocPoly:
    return a.mul(b, maxdeg)


def parse_word(text: str, alphabet: Alphabet = XY) -> Word:
    """Split ``text`` into letters of ``alphabet`` (longest match first)."""
    if text == "1":
        return ()
    names = sorted(alphabet.letters, key=len, reverse=True)
    out = []
    i = 0
    while i < len(text):
        for name in names:
            if text.startswith(name, i):
                out.append(alphabet.index(name))
                i += len(name)
                break
        else:
            raise ValueError(f"cannot read letter at {text[i:]!r} over {alphabet.letters}")
    return tuple(out)


def exp_trunc(a: AssocPoly, N: int) -> AssocPoly:
    if a.constant_term():
        raise ConstantTermViolation("exp needs a zero constant term")
    if a.field.char:
        raise FieldMismatch("exp needs characteristic zero")
    out = AssocPoly.one(a.alphabet, a.field)
    term = out
    for k in range(1, N + 1):
        term = term.mul(a, N).scale(Fraction(1, k))
        if not term:
            break
        out = out + term
    return out


def log_trunc(a: AssocPoly, N: int) -> AssocPoly:
    if a.constant_term() != 1:
        raise ConstantTermViolation("log needs constant term 1")
    if a.field.char:
        raise FieldMismatch("log needs characteristic zero")
    b = a - AssocPoly.one(a.alphabet, a.field)
    out = b._like({})
    term = AssocPoly.one(a.alphabet, a.field)
    for k in range(1, N + 1):
        term = term.mul(b, N)
        if not term:
            break
        out = out + term.scale(Fraction((-1) ** (k - 1), k))
    return out


def decompose(a: AssocPoly):
    """Return ``(a0, a1, a2)`` with ``a = a0 + a1*x + a2*y``."""
    if a.alphabet != XY:
        raise AlphabetMismatch("decompose is defined over {x, y}")
    parts = ({}, {})
    for w, c in a.terms.items():
        if w:
            parts[w[-1]][w[:-1]] = c
    return (a.constant_term(), a._like(parts[X]), a._like(parts[Y]))


def d_x(a: AssocPoly) -> AssocPoly:
    return decompose(a)[1]


def d_y(a: AssocPoly) -> AssocPoly:
    return decompose(a)[2]


def transpose(a: AssocPoly) -> AssocPoly:
    return a._like({w[::-1]: (-c if len(w) % 2 else c) for w, c in a.terms.items()})


class TraceElement(_SparseBase):
    """Cyclic words; keys are least rotations."""

    __slots__ = ()


class QuadTraceElement(_SparseBase):
    """Cyclic words modulo signed reversal; keys are canonical representatives."""

    __slots__ = ()


def quad_canonical(word: Word):
    """Return ``(key, sign)``; ``sign`` is 0 when the class is forced to vanish."""
    r = min_rotation(word)
    s = min_rotation(word[::-1])
    flip = -1 if len(word) % 2 else 1
    if r == s:
        return (r, 1) if flip == 1 else (r, 0)
    return (r, 1) if r < s else (s, flip)


def cyclic_trace(a: AssocPoly) -> TraceElement:
    if a.constant_term():
        raise NonzeroConstantTerm("trace is defined on the augmentation ideal")
    out: Dict[Word, object] = {}
    for w, c in a.terms.items():
        k = min_rotation(w)
        out[k] = out.get(k, 0) + c
    return TraceElement(out, a.alphabet, a.field)


def quadratic_trace(a: AssocPoly) -> QuadTraceElement:
    if a.field.char == 2:
        raise FieldMismatch("the quadratic quotient needs characteristic other than 2")
    if a.constant_term():
        raise NonzeroConstantTerm("trace is defined on the augmentation ideal")
    out: Dict[Word, object] = {}
    for w, c in a.terms.items():
        k, sign = quad_canonical(w)
        if sign:
            out[k] = out.get(k, 0) + (c if sign == 1 else -c)
    return QuadTraceElement(out, a.alphabet, a.field)
