"""Graded connected commutative Hopf algebras given by generators.

A :class:`HopfPresentation` lists generators with their degrees and a table
of reduced coproducts ``Δ'x = Σ w · left ⊗ right`` where ``left`` and
``right`` are monomials.  The same engine serves the Feynman-graph algebra
and the algebra of coordinates on formal diffeomorphisms.

Elements of the free commutative algebra are :class:`GraphPoly` instances;
tensors are plain dicts keyed by tuples of monomials.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .series import (LAURENT, QQ, LaurentSeries, TruncatedSeries,
                     laurent_split)

Monomial = tuple  # sorted tuple of generator keys


class UnknownGenerator(KeyError):
    pass


class PresentationError(ValueError):
    pass


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class GraphPoly:
    """Polynomial with rational coefficients in commuting generators.

    ``terms`` maps monomials (sorted tuples of generator keys, ``()`` for the
    unit) to nonzero :class:`~fractions.Fraction` coefficients.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(sorted(m))] = clean.get(tuple(sorted(m)), 0) + c
        self._terms = {m: c for m, c in sorted(clean.items()) if c}

    @classmethod
    def gen(cls, key: str) -> "GraphPoly":
        return cls({(key,): 1})

    @classmethod
    def scalar(cls, c) -> "GraphPoly":
        return cls({(): c})

    @property
    def element_algebra(self):
        return POLY

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_scalar(self) -> bool:
        return all(m == () for m in self._terms)

    def scalar_part(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def generators(self) -> set:
        return {k for m in self._terms for k in m}

    def degree(self, degrees: Mapping[str, int]) -> int:
        return max((sum(degrees[k] for k in m) for m in self._terms), default=0)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, GraphPoly):
            other = GraphPoly.scalar(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return GraphPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return GraphPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GraphPoly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, GraphPoly):
            return NotImplemented
        out = defaultdict(Fraction)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                out[mono_mul(m1, m2)] += c1 * c2
        return GraphPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GraphPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GraphPoly.scalar(other)
        if not isinstance(other, GraphPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms.items():
            body = "*".join(m)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(text if not parts and sign == "+" else
                         (f"-{text}" if not parts else f"{sign} {text}"))
        return " ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"GraphPoly({self.render()!r})"


class PolyAlgebra:
    name = "GraphPoly"

    def zero(self):
        return GraphPoly()

    def one(self):
        return GraphPoly.scalar(1)

    def coerce(self, x):
        if isinstance(x, GraphPoly):
            return x
        return GraphPoly.scalar(QQ.coerce(x))

    def is_zero(self, x):
        return not x

    def is_one(self, x):
        return x == 1

    def inverse(self, x):
        from .series import NotInvertible
        if not x.is_scalar() or not x.scalar_part():
            raise NotInvertible("only nonzero scalars are units in GraphPoly")
        return GraphPoly.scalar(1 / x.scalar_part())

    def render(self, x):
        return x.render()

    def __repr__(self):
        return "GraphPoly"


POLY = PolyAlgebra()


# -- tensors -----------------------------------------------------------------------

def tensor_add(acc: dict, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def tensor_mul(a: Mapping, b: Mapping) -> dict:
    """Product of two tensors of the same arity (componentwise monomials)."""
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = tuple(mono_mul(x, y) for x, y in zip(ka, kb))
            tensor_add(out, key, ca * cb)
    return out


def render_tensor(t: Mapping) -> str:
    if not t:
        return "0"
    parts = []
    for key, c in sorted(t.items()):
        sides = " ⊗ ".join("*".join(m) if m else "1" for m in key)
        parts.append(f"{c}·{sides}" if c != 1 else sides)
    return " + ".join(parts)


# -- presentations ---------------------------------------------------------------

@dataclass(frozen=True)
class HopfPresentation:
    """Generators with degrees and their reduced coproducts.

    ``reduced`` maps a generator key to a dict ``{(left, right): weight}``
    with ``left``/``right`` nonempty monomials.
    """

    name: str
    degrees: Mapping[str, int]
    reduced: Mapping[str, Mapping[tuple, Fraction]]
    meta: Mapping[str, object] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for key, table in self.reduced.items():
            if key not in self.degrees:
                raise PresentationError(f"coproduct for unknown generator {key}")
            d = self.degrees[key]
            for (left, right) in table:
                if not left or not right:
                    raise PresentationError(f"{key}: reduced term with empty side")
                dl = self.mono_degree(left)
                dr = self.mono_degree(right)
                if dl + dr != d:
                    raise PresentationError(
                        f"{key}: term {left}⊗{right} breaks the grading")

    @property
    def generators(self) -> list:
        return sorted(self.degrees, key=lambda k: (self.degrees[k], k))

    def degree(self, key: str) -> int:
        try:
            return self.degrees[key]
        except KeyError:
            raise UnknownGenerator(key) from None

    def mono_degree(self, m: Monomial) -> int:
        return sum(self.degree(k) for k in m)

    def reduced_terms(self, key: str) -> Mapping[tuple, Fraction]:
        self.degree(key)
        return self.reduced.get(key, {})

    def check_known(self, x: GraphPoly):
        for k in x.generators():
            self.degree(k)


# -- coproduct and antipode ------------------------------------------------------

def generator_coproduct(h: HopfPresentation, key: str) -> dict:
    cache = h._cache.setdefault("delta", {})
    if key not in cache:
        t = {((key,), ()): Fraction(1), ((), (key,)): Fraction(1)}
        for (l, r), w in h.reduced_terms(key).items():
            tensor_add(t, (l, r), Fraction(w))
        cache[key] = t
    return cache[key]


def monomial_coproduct(h: HopfPresentation, m: Monomial) -> dict:
    out = {((), ()): Fraction(1)}
    for key in m:
        out = tensor_mul(out, generator_coproduct(h, key))
    return out


def coproduct(h: HopfPresentation, x: GraphPoly) -> dict:
    """Full coproduct of ``x`` as ``{(left, right): coefficient}``."""
    h.check_known(x)
    out: dict = {}
    for m, c in x.items():
        for key, w in monomial_coproduct(h, m).items():
            tensor_add(out, key, c * w)
    return out


def counit(x: GraphPoly) -> Fraction:
    return x.scalar_part()


def _antipode_gen(h: HopfPresentation, key: str) -> GraphPoly:
    cache = h._cache.setdefault("antipode", {})
    if key not in cache:
        acc = -GraphPoly.gen(key)
        for (l, r), w in h.reduced_terms(key).items():
            acc = acc - antipode_monomial(h, l) * GraphPoly({r: w})
        cache[key] = acc
    return cache[key]


def antipode_monomial(h: HopfPresentation, m: Monomial) -> GraphPoly:
    out = GraphPoly.scalar(1)
    for key in m:
        out = out * _antipode_gen(h, key)
    return out


def antipode(h: HopfPresentation, x: GraphPoly) -> GraphPoly:
    """Antipode via ``S(x) = -x - Σ S(x')x''`` over the reduced coproduct."""
    h.check_known(x)
    out = GraphPoly()
    for m, c in x.items():
        out = out + antipode_monomial(h, m) * c
    return out


# -- characters --------------------------------------------------------------------

class Character:
    """Unital multiplicative map from generators into a commutative algebra.

    Values are stored per generator; monomials evaluate to products and the
    unit evaluates to ``algebra.one()``.
    """

    __slots__ = ("values", "algebra")

    def __init__(self, values: Mapping[str, object], algebra=QQ):
        self.values = {k: algebra.coerce(v) for k, v in values.items()}
        self.algebra = algebra

    def on_generator(self, key: str):
        try:
            return self.values[key]
        except KeyError:
            raise UnknownGenerator(key) from None

    def on_monomial(self, m: Monomial):
        out = self.algebra.one()
        for key in m:
            out = out * self.on_generator(key)
        return out

    def __call__(self, x):
        if isinstance(x, str):
            return self.on_generator(x)
        if isinstance(x, tuple):
            return self.on_monomial(x)
        out = self.algebra.zero()
        for m, c in x.items():
            out = out + self.on_monomial(m) * c
        return out

    def apply_series(self, s: TruncatedSeries) -> TruncatedSeries:
        """Evaluate a series with GraphPoly coefficients coefficientwise."""
        return TruncatedSeries({k: self(c) for k, c in s.items()}, s.order,
                               self.algebra, s.var)

    def __eq__(self, other):
        return (isinstance(other, Character) and self.values == other.values)

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{k}: {self.algebra.render(v)}"
                         for k, v in sorted(self.values.items()))
        return f"Character({{{body}}})"


def counit_character(h: HopfPresentation, algebra=QQ) -> Character:
    return Character({k: algebra.zero() for k in h.degrees}, algebra)


def convolve(h: HopfPresentation, f: Character, g: Character) -> Character:
    """``(f*g)(x) = (f⊗g)Δx`` on every generator."""
    algebra = f.algebra if f.algebra is not QQ else g.algebra
    values = {}
    for key in h.degrees:
        acc = f.on_generator(key) + g.on_generator(key)
        for (l, r), w in h.reduced_terms(key).items():
            acc = acc + (f.on_monomial(l) * g.on_monomial(r)) * Fraction(w)
        values[key] = acc
    return Character(values, algebra)


def compose_antipode(h: HopfPresentation, f: Character) -> Character:
    """The convolution inverse ``f∘S``."""
    return Character({k: f(_antipode_gen(h, k)) for k in h.degrees}, f.algebra)


def inverse(h: HopfPresentation, f: Character) -> Character:
    return compose_antipode(h, f)


def character_action(h: HopfPresentation, gamma: Character, x: GraphPoly) -> GraphPoly:
    """``x^γ = (γ⊗id)Δx`` for a scalar-valued character ``γ``."""
    h.check_known(x)
    cache: dict = {}

    def on_gen(key):
        if key not in cache:
            acc = GraphPoly({(): gamma.on_generator(key), (key,): 1})
            for (l, r), w in h.reduced_terms(key).items():
                acc = acc + GraphPoly({r: gamma.on_monomial(l) * Fraction(w)})
            cache[key] = acc
        return cache[key]

    out = GraphPoly()
    for m, c in x.items():
        term = GraphPoly.scalar(c)
        for key in m:
            term = term * on_gen(key)
        out = out + term
    return out


def act_on_series(h: HopfPresentation, gamma: Character, s: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise action on a series with GraphPoly coefficients."""
    return s.map_coeffs(lambda c: character_action(h, gamma, c), POLY)


# -- Birkhoff decomposition --------------------------------------------------------

def minimal_subtraction(a: LaurentSeries) -> LaurentSeries:
    """Projection onto strictly negative powers."""
    return laurent_split(a)[0]


def constants_in_minus(a: LaurentSeries) -> LaurentSeries:
    """Projection onto powers ``<= 0``; puts constants into the pole part."""
    neg, pos = laurent_split(a)
    c0 = pos.coeff(0) if (pos.order is None or pos.order >= 0) else 0
    return neg + LaurentSeries({0: c0}, neg.order)


SPLITTINGS = {"ms": minimal_subtraction, "ms-with-constants": constants_in_minus}


def birkhoff_decompose(h: HopfPresentation, gamma: Character, projection="ms"):
    """Return ``(γ₋, γ₊)`` with ``γ = (γ₋∘S) * γ₊``.

    Uses the grading recursion ``γ₋(x) = -π(γ̄(x))``, ``γ₊(x) = (1-π)γ̄(x)``
    with ``γ̄(x) = γ(x) + Σ γ₋(x')γ(x'')``; ``γ₋`` is memoised per generator.
    """
    pi = SPLITTINGS[projection] if isinstance(projection, str) else projection
    minus: dict = {}
    plus: dict = {}

    def minus_mono(m):
        out = LAURENT.one()
        for k in m:
            out = out * minus[k]
        return out

    for key in h.generators:  # increasing degree
        bar = gamma.on_generator(key)
        for (l, r), w in h.reduced_terms(key).items():
            bar = bar + (minus_mono(l) * gamma.on_monomial(r)) * Fraction(w)
        pole = pi(bar)
        minus[key] = -pole
        plus[key] = bar - pole
    return Character(minus, LAURENT), Character(plus, LAURENT)


def birkhoff_decompose_naive(h: HopfPresentation, gamma: Character, projection="ms"):
    """Same recursion without memoisation; an independent cross-check."""
    pi = SPLITTINGS[projection] if isinstance(projection, str) else projection

    def bar(key):
        acc = gamma.on_generator(key)
        for (l, r), w in h.reduced_terms(key).items():
            left = LAURENT.one()
            for k in l:
                left = left * minus(k)
            acc = acc + (left * gamma.on_monomial(r)) * Fraction(w)
        return acc

    def minus(key):
        return -pi(bar(key))

    def plus(key):
        b = bar(key)
        return b - pi(b)

    return (Character({k: minus(k) for k in h.degrees}, LAURENT),
            Character({k: plus(k) for k in h.degrees}, LAURENT))


# -- axiom checks ------------------------------------------------------------------

def _apply_coproduct_at(h, tensor: Mapping, slot: int) -> dict:
    """Apply Δ to tensor factor ``slot``, raising the arity by one."""
    out: dict = {}
    for key, c in tensor.items():
        for (a, b), w in monomial_coproduct(h, key[slot]).items():
            new = key[:slot] + (a, b) + key[slot + 1:]
            tensor_add(out, new, c * w)
    return out


def coassociativity_defect(h: HopfPresentation, key: str) -> dict:
    d = generator_coproduct(h, key)
    lhs = _apply_coproduct_at(h, d, 0)
    rhs = _apply_coproduct_at(h, d, 1)
    diff = dict(lhs)
    for k, c in rhs.items():
        tensor_add(diff, k, -c)
    return diff


def counit_defect(h: HopfPresentation, key: str) -> tuple:
    d = generator_coproduct(h, key)
    left = GraphPoly({r: c for (l, r), c in d.items() if l == ()})
    right = GraphPoly({l: c for (l, r), c in d.items() if r == ()})
    x = GraphPoly.gen(key)
    return left - x, right - x


def antipode_defect(h: HopfPresentation, x: GraphPoly) -> tuple:
    """``m(S⊗id)Δx - ε(x)`` and ``m(id⊗S)Δx - ε(x)``."""
    left = GraphPoly()
    right = GraphPoly()
    for (l, r), c in coproduct(h, x).items():
        left = left + antipode_monomial(h, l) * GraphPoly({r: c})
        right = right + GraphPoly({l: c}) * antipode_monomial(h, r)
    e = counit(x)
    return left - e, right - e


def random_monomials(h: HopfPresentation, rng, max_degree: int, count: int) -> list:
    """Random products of generators with total degree ``<= max_degree``."""
    gens = h.generators
    out = []
    for _ in range(count):
        m = []
        budget = max_degree
        while True:
            choices = [k for k in gens if h.degrees[k] <= budget]
            if not choices or (m and rng.random() < 0.4):
                break
            k = rng.choice(choices)
            m.append(k)
            budget -= h.degrees[k]
        out.append(tuple(sorted(m)))
    return out


def check_axioms(h: HopfPresentation, rng=None, samples: int = 20) -> dict:
    """Coassociativity, counit and antipode axioms on every generator.

    Returns ``{"status": "pass"|"fail", "first_failure": ...}``.
    """
    rng = rng or random.Random(0)
    for key in h.generators:
        bad = coassociativity_defect(h, key)
        if bad:
            return {"status": "fail", "first_failure": {
                "axiom": "coassociativity", "generator": key,
                "defect": render_tensor(bad)}}
        l, r = counit_defect(h, key)
        if l or r:
            return {"status": "fail", "first_failure": {
                "axiom": "counit", "generator": key}}
        l, r = antipode_defect(h, GraphPoly.gen(key))
        if l or r:
            return {"status": "fail", "first_failure": {
                "axiom": "antipode", "generator": key}}
    top = max(h.degrees.values(), default=0)
    for m in random_monomials(h, rng, max(top, 2), samples):
        l, r = antipode_defect(h, GraphPoly({m: 1}))
        if l or r:
            return {"status": "fail", "first_failure": {
                "axiom": "antipode", "monomial": list(m)}}
    return {"status": "pass", "first_failure": None}
