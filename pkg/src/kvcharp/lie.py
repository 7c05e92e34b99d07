"""Free Lie algebra in the Lyndon basis.

A Lie polynomial stores coefficients on Lyndon words; the basis element for
a Lyndon word ``w`` is its standard bracketing ``P_w``.  All arithmetic goes
through the embedding ``tau`` into the associative algebra and back by
triangular elimination, using that ``tau(P_w) = w + (larger words)``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .errors import AlphabetMismatch, NotLieElement
from .scalars import INF, QQ
from .words import XY, Y, Alphabet, AssocPoly, Word, _SparseBase, _plain, _wrap

Tree = Union[int, Tuple["Tree", "Tree"]]


def is_lyndon(word: Word) -> bool:
    n = len(word)
    if n == 0:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, n))


def lyndon_words(k: int, n: int) -> List[Word]:
    """Lyndon words of length exactly ``n`` over ``k`` letters, increasing (Duval)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


@lru_cache(maxsize=None)
def standard_factorization(word: Word) -> Tuple[Word, Word]:
    """Split a Lyndon word as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word} has no standard factorization")


@lru_cache(maxsize=None)
def bracketing(word: Word) -> Tree:
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracketing(u), bracketing(v))


def render_tree(tree: Tree, alphabet: Alphabet = XY) -> str:
    if isinstance(tree, int):
        return alphabet.letters[tree]
    return f"[{render_tree(tree[0], alphabet)},{render_tree(tree[1], alphabet)}]"


@dataclass(frozen=True)
class LyndonMonomial:
    word: Word
    alphabet: Alphabet = XY

    def __post_init__(self):
        if not is_lyndon(self.word):
            raise ValueError(f"{self.word} is not a Lyndon word")

    @property
    def bracketing(self) -> Tree:
        return bracketing(self.word)

    def __str__(self):
        return render_tree(self.bracketing, self.alphabet)


def lyndon_basis(alphabet: Alphabet, n: int) -> List[LyndonMonomial]:
    if n < 1:
        raise ValueError("degree must be at least 1")
    return [LyndonMonomial(w, alphabet) for w in lyndon_words(len(alphabet), n)]


@lru_cache(maxsize=None)
def _tau_word(word: Word) -> Dict[Word, int]:
    if len(word) == 1:
        return {word: 1}
    u, v = standard_factorization(word)
    a, b = _tau_word(u), _tau_word(v)
    out: Dict[Word, int] = {}
    for s, c in a.items():
        for t, d in b.items():
            out[s + t] = out.get(s + t, 0) + c * d
            out[t + s] = out.get(t + s, 0) - c * d
    return {w: c for w, c in out.items() if c}


class LiePoly(_SparseBase):
    """Lie polynomial with coefficients on Lyndon words."""

    __slots__ = ()

    def __init__(self, terms=None, alphabet: Alphabet = XY, field=QQ):
        super().__init__(terms, alphabet, field)
        for w in self.terms:
            if not is_lyndon(w):
                raise ValueError(f"{alphabet.render(w)} is not a Lyndon word")

    @classmethod
    def gen(cls, name, alphabet: Alphabet = XY, field=QQ) -> "LiePoly":
        i = alphabet.index(name) if isinstance(name, str) else name
        return cls({(i,): 1}, alphabet, field)

    @classmethod
    def gens(cls, alphabet: Alphabet = XY, field=QQ):
        return tuple(cls.gen(i, alphabet, field) for i in range(len(alphabet)))

    @classmethod
    def zero(cls, alphabet: Alphabet = XY, field=QQ) -> "LiePoly":
        return cls({}, alphabet, field)

    def zero_like(self) -> "LiePoly":
        return self._like({})

    def _render_word(self, w):
        return render_tree(bracketing(w), self.alphabet)

    def monomials(self):
        return [LyndonMonomial(w, self.alphabet) for w in sorted(self.terms, key=lambda w: (len(w), w))]

    def tau(self) -> AssocPoly:
        out: Dict[Word, object] = {}
        for w, c in _plain(self.terms, self.field).items():
            for v, k in _tau_word(w).items():
                out[v] = out.get(v, 0) + c * k
        return AssocPoly._raw(_wrap(out, self.field), self.alphabet, self.field)

    def bracket(self, other: "LiePoly", maxdeg: Optional[int] = None) -> "LiePoly":
        self._check(other)
        if not self.terms or not other.terms:
            return self._like({})
        a, b = self.tau(), other.tau()
        return lie_from_assoc(a.commutator(b, maxdeg))

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)


def lie_from_assoc(a: AssocPoly) -> LiePoly:
    """Inverse of ``tau`` on its image; raises :class:`NotLieElement` otherwise."""
    if a.constant_term():
        raise NotLieElement("a Lie element has no constant term", a)
    p = a.field.char
    rem = _plain(a.terms, a.field)
    # subtracting tau(P_w) only introduces words larger than w, so a heap suffices
    heap = [(len(w), w) for w in rem]
    heapq.heapify(heap)
    out: Dict[Word, object] = {}
    while heap:
        _, w = heapq.heappop(heap)
        if w not in rem:
            continue
        if not is_lyndon(w):
            raise NotLieElement(
                f"not a Lie element: leading word {a.alphabet.render(w)} is not Lyndon",
                AssocPoly._raw(_wrap(rem, a.field), a.alphabet, a.field))
        c = rem.pop(w)
        out[w] = c
        for v, k in _tau_word(w).items():
            if v == w:
                continue
            s = rem.get(v, 0) - c * k
            if p:
                s %= p
            if s:
                if v not in rem:
                    heapq.heappush(heap, (len(v), v))
                rem[v] = s
            else:
                rem.pop(v, None)
    out = _wrap(out, a.field)
    return LiePoly._raw(out, a.alphabet, a.field)


def tau(u: LiePoly) -> AssocPoly:
    return u.tau()


def bracket(u: LiePoly, v: LiePoly) -> LiePoly:
    return u.bracket(v)


def _left_normed(word: Word, alphabet, field) -> AssocPoly:
    letters = AssocPoly.gens(alphabet, field)
    acc = letters[word[0]]
    for i in word[1:]:
        acc = acc.commutator(letters[i])
    return acc


def is_lie_dynkin(a: AssocPoly) -> bool:
    """Dynkin-Specht-Wever test ``delta(a) == n a`` for homogeneous ``a`` of degree n.

    When the characteristic divides ``n`` this is only a necessary condition.
    """
    degs = a.degrees()
    if not degs:
        return True
    if len(degs) != 1 or degs[0] == 0:
        raise ValueError("a homogeneous element of positive degree is required")
    n = degs[0]
    delta = a._like({})
    for w, c in a.terms.items():
        delta = delta + _left_normed(w, a.alphabet, a.field).scale(c)
    return delta == a.scale(n)


def substitute(u: LiePoly, images):
    """Apply the Lie homomorphism sending each generator to its image.

    ``images`` is a sequence indexed like the alphabet or a mapping keyed by
    letter name.  Targets need ``bracket``, ``scale`` and ``+``.
    """
    if isinstance(images, Mapping):
        images = [images[name] for name in u.alphabet.letters]
    images = list(images)
    if len(images) != len(u.alphabet):
        raise AlphabetMismatch("one image per generator is required")
    cache: Dict[Tree, object] = {}

    def ev(tree):
        if isinstance(tree, int):
            return images[tree]
        if tree not in cache:
            cache[tree] = ev(tree[0]).bracket(ev(tree[1]))
        return cache[tree]

    out = None
    for w in sorted(u.terms, key=lambda w: (len(w), w)):
        term = ev(bracketing(w)).scale(u.terms[w])
        out = term if out is None else out + term
    if out is None:
        out = images[0].scale(0)
    return out


def depth(u: LiePoly) -> Union[int, float]:
    """Least number of ``y`` letters over the words of ``tau(u)``; ``INF`` for zero."""
    if u.alphabet != XY:
        raise AlphabetMismatch("depth is defined over {x, y}")
    return min((w.count(Y) for w in u.tau().terms), default=INF)


def ad_apply(u: LiePoly, k: int, v: LiePoly) -> LiePoly:
    if k < 0:
        raise ValueError("k must be non-negative")
    for _ in range(k):
        v = u.bracket(v)
    return v


def swap_xy(u: LiePoly) -> LiePoly:
    x, y = LiePoly.gens(u.alphabet, u.field)
    return substitute(u, [y, x])


class LieSeries:
    """Graded Lie element truncated at degree ``N``."""

    def __init__(self, components: Mapping[int, LiePoly], N: int,
                 alphabet: Alphabet = XY, field=QQ):
        self.N = N
        self.alphabet = alphabet
        self.field = field
        self.components: Dict[int, LiePoly] = {}
        for k, c in components.items():
            if not 1 <= k <= N:
                continue
            if c.alphabet != alphabet or c.field != field:
                raise AlphabetMismatch("component over a different alphabet or field")
            if c.terms and c.degrees() != [k]:
                raise ValueError(f"component {k} is not homogeneous of degree {k}")
            if c:
                self.components[k] = c

    @classmethod
    def from_assoc(cls, a: AssocPoly, N: int) -> "LieSeries":
        comps = {k: lie_from_assoc(a.homogeneous(k)) for k in range(1, N + 1)}
        return cls(comps, N, a.alphabet, a.field)

    @classmethod
    def from_lie(cls, u: LiePoly, N: int) -> "LieSeries":
        return cls({k: u.homogeneous(k) for k in range(1, N + 1)}, N, u.alphabet, u.field)

    def __getitem__(self, k: int) -> LiePoly:
        return self.components.get(k, LiePoly.zero(self.alphabet, self.field))

    def degrees(self):
        return sorted(self.components)

    def total(self) -> LiePoly:
        out = LiePoly.zero(self.alphabet, self.field)
        for k in self.degrees():
            out = out + self.components[k]
        return out

    def tau(self) -> AssocPoly:
        return self.total().tau()

    def _map(self, f, N=None):
        return LieSeries({k: f(c) for k, c in self.components.items()},
                         self.N if N is None else N, self.alphabet, self.field)

    def __add__(self, other: "LieSeries") -> "LieSeries":
        N = min(self.N, other.N)
        keys = set(self.components) | set(other.components)
        return LieSeries({k: self[k] + other[k] for k in keys}, N, self.alphabet, self.field)

    def __neg__(self):
        return self._map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._map(lambda u: u.scale(c))

    def __rmul__(self, c):
        return self.scale(c)

    def truncate(self, N: int) -> "LieSeries":
        return self._map(lambda c: c, N=N)

    def __eq__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        return self.components == other.components

    def __str__(self):
        return "\n".join(f"{k}: {self.components[k]}" for k in self.degrees()) or "0"

    def __repr__(self):
        return f"LieSeries(N={self.N}, {self.field})"

    def to_json(self) -> dict:
        return {"N": self.N,
                "components": [{"degree": k, **self.components[k].to_json()} for k in self.degrees()]}


def witt_dimension(k: int, n: int) -> int:
    """Necklace count (1/n) sum_{d|n} mu(d) k^(n/d)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * k ** (n // d)
    return total // n


def _mobius(n: int) -> int:
    out, m, f = 1, n, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            out = -out
        f += 1
    return -out if m > 1 else out
