"""The Lie algebra t_4 as K t12 + lie(t13, t23) + lie(t14, t24, t34), and grt checks.

``lie(t14, t24, t34)`` is an ideal acted on by ``K t12 + lie(t13, t23)``;
``lie(t13, t23)`` is an ideal acted on by ``t12``.  The action of each
generator on ``t14, t24, t34`` is a table of Lie polynomials, extended to
derivations; brackets of ``lie(t13, t23)`` act through commutators of those
derivations.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .lie import LiePoly, bracketing, lie_from_assoc, lyndon_words, substitute
from .notation import parse_lie
from .scalars import GF, QQ, require_prime
from .words import Alphabet, AssocPoly, format_terms, _fmt_coeff, _plain, _wrap

U_ALPHABET = Alphabet(("t13", "t23"))
V_ALPHABET = Alphabet(("t14", "t24", "t34"))

DEFAULT_ACTIONS: Dict[str, Dict[str, str]] = {
    "t12": {"t14": "[t14,t24]", "t24": "[t24,t14]", "t34": "0"},
    "t13": {"t14": "[t14,t34]", "t24": "0", "t34": "[t34,t14]"},
    "t23": {"t14": "0", "t24": "[t24,t34]", "t34": "[t34,t24]"},
}


def _derive(images: List[AssocPoly], a: AssocPoly) -> AssocPoly:
    """Extend letter images to a derivation of the associative algebra and apply it."""
    imgs = [_plain(img.terms, img.field) for img in images]
    out: Dict[tuple, object] = {}
    for w, c in _plain(a.terms, a.field).items():
        for i, letter in enumerate(w):
            head, tail = w[:i], w[i + 1:]
            for m, d in imgs[letter].items():
                key = head + m + tail
                out[key] = out.get(key, 0) + c * d
    return a._like(_wrap(out, a.field))


class T4Algebra:
    def __init__(self, field=QQ, actions: Optional[Mapping[str, Mapping[str, str]]] = None):
        self.field = field
        self.actions = {g: dict(t) for g, t in (actions or DEFAULT_ACTIONS).items()}
        self._images = {
            g: [parse_lie(self.actions[g][name], V_ALPHABET, field).tau() for name in V_ALPHABET.letters]
            for g in ("t12", "t13", "t23")
        }
        self._tree_cache: Dict[object, List[AssocPoly]] = {}

    def __repr__(self):
        return f"T4Algebra({self.field})"

    # elements ---------------------------------------------------------------

    def element(self, c12=0, u: Optional[LiePoly] = None, v: Optional[LiePoly] = None) -> "T4Element":
        u = LiePoly.zero(U_ALPHABET, self.field) if u is None else u
        v = LiePoly.zero(V_ALPHABET, self.field) if v is None else v
        return T4Element(self.field(c12), u, v.tau(), self)

    def zero(self) -> "T4Element":
        return self.element()

    def generator(self, i: int, j: int) -> "T4Element":
        if not (1 <= i <= 4 and 1 <= j <= 4) or i == j:
            raise ValueError(f"no generator t^{{{i},{j}}} in t_4")
        i, j = min(i, j), max(i, j)
        name = f"t{i}{j}"
        if name == "t12":
            return self.element(c12=1)
        if name in U_ALPHABET.letters:
            return self.element(u=LiePoly.gen(name, U_ALPHABET, self.field))
        return self.element(v=LiePoly.gen(name, V_ALPHABET, self.field))

    # actions ----------------------------------------------------------------

    def act_u(self, u: LiePoly) -> LiePoly:
        """t12 acting on lie(t13, t23): -ad(t13 + t23)."""
        s = LiePoly.gen("t13", U_ALPHABET, self.field) + LiePoly.gen("t23", U_ALPHABET, self.field)
        return -s.bracket(u)

    def _tree_images(self, tree) -> List[AssocPoly]:
        """Images of t14, t24, t34 under the derivation by a bracket tree of lie(t13, t23)."""
        if isinstance(tree, int):
            return self._images[U_ALPHABET.letters[tree]]
        if tree not in self._tree_cache:
            a, b = self._tree_images(tree[0]), self._tree_images(tree[1])
            self._tree_cache[tree] = [_derive(a, g) - _derive(b, f) for f, g in zip(a, b)]
        return self._tree_cache[tree]

    def act_v_assoc(self, c12, u: LiePoly, a: AssocPoly) -> AssocPoly:
        images = [img.scale(c12) for img in self._images["t12"]] if c12 else [a._like({})] * 3
        for w, c in u.terms.items():
            images = [s + t.scale(c) for s, t in zip(images, self._tree_images(bracketing(w)))]
        return _derive(images, a)

    def act_v(self, c12, u: LiePoly, v: LiePoly) -> LiePoly:
        if not v or (not c12 and not u):
            return v.zero_like()
        return lie_from_assoc(self.act_v_assoc(c12, u, v.tau()))

    def bracket(self, s: "T4Element", t: "T4Element") -> "T4Element":
        u = s.u.bracket(t.u)
        if s.c12:
            u = u + self.act_u(t.u).scale(s.c12)
        if t.c12:
            u = u - self.act_u(s.u).scale(t.c12)
        # the lie(t14, t24, t34) part stays in associative form until rendered
        va = s.va.commutator(t.va)
        if t.va and (s.c12 or s.u):
            va = va + self.act_v_assoc(s.c12, s.u, t.va)
        if s.va and (t.c12 or t.u):
            va = va - self.act_v_assoc(t.c12, t.u, s.va)
        return T4Element(self.field.zero, u, va, self)


class T4Element:
    """``c12 t12 + u + v``; ``v`` is held as its image ``va`` in the associative algebra."""

    __slots__ = ("c12", "u", "va", "algebra", "_v")

    def __init__(self, c12, u: LiePoly, va: AssocPoly, algebra: T4Algebra):
        self.c12 = c12
        self.u = u
        self.va = va
        self.algebra = algebra
        self._v = None

    @property
    def v(self) -> LiePoly:
        if self._v is None:
            self._v = lie_from_assoc(self.va)
        return self._v

    def __add__(self, other: "T4Element") -> "T4Element":
        return T4Element(self.c12 + other.c12, self.u + other.u, self.va + other.va, self.algebra)

    def __neg__(self):
        return T4Element(-self.c12, -self.u, -self.va, self.algebra)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "T4Element":
        c = self.algebra.field(c)
        return T4Element(c * self.c12, self.u.scale(c), self.va.scale(c), self.algebra)

    def __rmul__(self, c):
        return self.scale(c)

    def bracket(self, other: "T4Element") -> "T4Element":
        return self.algebra.bracket(self, other)

    def is_zero(self) -> bool:
        return not self.c12 and not self.u and not self.va

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, T4Element):
            return NotImplemented
        return self.c12 == other.c12 and self.u == other.u and self.va == other.va

    def __hash__(self):
        return hash((self.c12, self.u, self.va))

    def __repr__(self):
        return f"T4Element({self})"

    def degree(self) -> int:
        return max(1 if self.c12 else 0, self.u.degree(), max(self.va.degrees(), default=0))

    def __str__(self):
        c = format_terms([(self.c12, "t12")]) if self.c12 else "0"
        return f"{c} / {self.u} / {self.v}"

    def to_json(self) -> dict:
        return {"c12": _fmt_coeff(self.c12), "u": str(self.u), "v": str(self.v)}


_DEFAULT: Dict[object, T4Algebra] = {}


def default_t4(field=QQ) -> T4Algebra:
    if field not in _DEFAULT:
        _DEFAULT[field] = T4Algebra(field)
    return _DEFAULT[field]


def t4_generator(i: int, j: int, algebra: Optional[T4Algebra] = None) -> T4Element:
    return (algebra or default_t4()).generator(i, j)


def t4_bracket(s: T4Element, t: T4Element) -> T4Element:
    return s.algebra.bracket(s, t)


# ---------------------------------------------------------------------------
# self-check of the model

@dataclass
class SelfCheckReport:
    results: List[Tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.results)

    def first_failure(self) -> Optional[str]:
        return next((name for name, ok in self.results if not ok), None)


def defining_relations(algebra: T4Algebra):
    """The 3 disjoint-pair and 12 triangle relations as ``(label, element)``."""
    t = lambda i, j: algebra.generator(i, j)
    out = []
    for (i, j), (k, l) in (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))):
        out.append((f"[t^{{{i},{j}}},t^{{{k},{l}}}]=0", t(i, j).bracket(t(k, l))))
    for triple in itertools.combinations(range(1, 5), 3):
        for i in triple:
            j, k = [a for a in triple if a != i]
            out.append((f"[t^{{{i},{j}}}+t^{{{i},{k}}},t^{{{j},{k}}}]=0",
                        (t(i, j) + t(i, k)).bracket(t(j, k))))
    return out


def random_lie(rng: random.Random, alphabet: Alphabet, field, maxdeg: int, nterms: int = 2) -> LiePoly:
    terms = {}
    for _ in range(nterms):
        d = rng.randint(1, maxdeg)
        words = lyndon_words(len(alphabet), d)
        terms[rng.choice(words)] = rng.randint(-3, 3)
    return LiePoly(terms, alphabet, field)


def random_t4(rng: random.Random, algebra: T4Algebra, maxdeg: int) -> T4Element:
    return algebra.element(rng.randint(-2, 2),
                           random_lie(rng, U_ALPHABET, algebra.field, maxdeg, 1),
                           random_lie(rng, V_ALPHABET, algebra.field, maxdeg, 1))


def jacobi(a, b, c):
    return a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))


def t4_selfcheck(maxdeg: int = 3, algebra: Optional[T4Algebra] = None,
                 trials: int = 20, seed: int = 0) -> SelfCheckReport:
    """Verify the model: defining relations, derivation and homomorphism properties, Jacobi.

    Random Jacobi triples have total degree at most ``max(maxdeg, 3)``.
    """
    if maxdeg < 2:
        raise ValueError("maxdeg must be at least 2")
    algebra = algebra or default_t4()
    rng = random.Random(seed)
    results = [(label, rel.is_zero()) for label, rel in defining_relations(algebra)]

    vgens = LiePoly.gens(V_ALPHABET, algebra.field)
    ugens = LiePoly.gens(U_ALPHABET, algebra.field)
    zero_u = ugens[0].zero_like()
    actors = {"t12": (1, zero_u), "t13": (0, ugens[0]), "t23": (0, ugens[1])}

    # each generator acts by a derivation of lie(t14, t24, t34)
    ok = True
    for name, (c, u) in actors.items():
        for _ in range(trials // 4 + 1):
            a = random_lie(rng, V_ALPHABET, algebra.field, max(1, maxdeg - 1), 1)
            b = random_lie(rng, V_ALPHABET, algebra.field, max(1, maxdeg - 1), 1)
            lhs = algebra.act_v(c, u, a.bracket(b))
            rhs = algebra.act_v(c, u, a).bracket(b) + a.bracket(algebra.act_v(c, u, b))
            ok &= lhs == rhs
    results.append(("action maps are derivations", ok))

    # the action of K t12 + lie(t13, t23) is a Lie homomorphism
    for (na, (ca, ua)), (nb, (cb, ub)) in itertools.combinations(actors.items(), 2):
        ta = algebra.element(ca, ua)
        tb = algebra.element(cb, ub)
        tab = ta.bracket(tb)
        good = True
        for g in vgens:
            lhs = (algebra.act_v(ca, ua, algebra.act_v(cb, ub, g))
                   - algebra.act_v(cb, ub, algebra.act_v(ca, ua, g)))
            good &= lhs == algebra.act_v(tab.c12, tab.u, g)
        results.append((f"action homomorphism on ({na},{nb})", good))

    cap = max(maxdeg, 3)
    good = True
    for _ in range(trials):
        degs = [1, 1, 1]
        for _ in range(cap - 3):
            degs[rng.randrange(3)] += rng.randint(0, 1)
        a, b, c = (random_t4(rng, algebra, d) for d in degs)
        good &= jacobi(a, b, c).is_zero()
    results.append(("Jacobi identity on random triples", good))
    return SelfCheckReport(results)


# ---------------------------------------------------------------------------
# grt relations

@dataclass
class GrtReport:
    p: int
    psi: LiePoly
    grt1_residual: LiePoly
    grt2_residual: LiePoly
    grt3_residual: T4Element
    grt2_lift_residual: Optional[LiePoly] = None

    @property
    def grt1_pass(self) -> bool:
        return self.grt1_residual.is_zero()

    @property
    def grt2_pass(self) -> bool:
        return self.grt2_residual.is_zero()

    @property
    def grt3_pass(self) -> bool:
        return self.grt3_residual.is_zero()

    @property
    def passed(self) -> bool:
        return self.grt1_pass and self.grt2_pass and self.grt3_pass

    @property
    def exploratory(self) -> bool:
        """Primes without a published verification; never gating."""
        return self.p >= 7

    def to_json(self) -> dict:
        return {
            "prime": self.p,
            "psi": str(self.psi),
            "grt1_pass": self.grt1_pass,
            "grt2_pass": self.grt2_pass,
            "grt3_pass": self.grt3_pass,
            "exploratory": self.exploratory,
            "grt1_residual": str(self.grt1_residual),
            "grt2_residual": str(self.grt2_residual),
            "grt2_lift_residual": str(self.grt2_lift_residual),
            "grt3_residual": self.grt3_residual.to_json(),
        }


def antisymmetry_residual(psi: LiePoly) -> LiePoly:
    x, y = LiePoly.gens(psi.alphabet, psi.field)
    return psi + substitute(psi, [y, x])


def hexagon_residual(psi: LiePoly) -> LiePoly:
    x, y = LiePoly.gens(psi.alphabet, psi.field)
    z = -x - y
    return psi + substitute(psi, [y, z]) + substitute(psi, [z, x])


def pentagon_residual(psi: LiePoly, algebra: T4Algebra) -> T4Element:
    t = algebra.generator
    lhs = (substitute(psi, [t(1, 2), t(2, 3) + t(2, 4)])
           + substitute(psi, [t(1, 3) + t(2, 3), t(3, 4)]))
    rhs = (substitute(psi, [t(2, 3), t(3, 4)])
           + substitute(psi, [t(1, 2) + t(1, 3), t(2, 4) + t(3, 4)])
           + substitute(psi, [t(1, 2), t(2, 3)]))
    return lhs - rhs


def check_grt(psi: LiePoly, p: int, algebra: Optional[T4Algebra] = None) -> GrtReport:
    require_prime(p, odd=True)
    if psi.field != GF(p):
        psi = psi.reduce_mod(p)
    algebra = algebra or default_t4(GF(p))
    return GrtReport(p, psi, antisymmetry_residual(psi), hexagon_residual(psi),
                     pentagon_residual(psi, algebra), hexagon_residual(_signed_lift(psi)))


def _signed_lift(psi: LiePoly) -> LiePoly:
    return LiePoly({w: c.signed() for w, c in psi.terms.items()}, psi.alphabet, QQ)
