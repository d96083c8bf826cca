"""Monomials, lexicographic orders and the two-term polynomial class.

Every polynomial the engine handles is zero, a signed monomial, or a
pure-difference binomial ``lead - trail``. That class is closed under the
S-polynomials and reductions Buchberger's algorithm performs, which is what
keeps coefficients at +-1 over any field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .graph import edge_name, parse_edge_name


class Indivisible(ArithmeticError):
    pass


class ForeignVariable(ValueError):
    pass


class ClassEscape(ArithmeticError):
    """An intermediate result left {0, +-monomial, pure-difference binomial}."""


class Monomial:
    """Sparse exponent map ``variable -> exponent`` (no zero exponents)."""

    __slots__ = ("items", "_hash", "degree")

    def __init__(self, exps: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(exps, Mapping):
            exps = exps.items()
        items = tuple(sorted((v, e) for v, e in exps if e))
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent on {edge_name(v)}")
        self.items = items
        self._hash = hash(items)
        self.degree = sum(e for _, e in items)

    @classmethod
    def var(cls, v: int, e: int = 1) -> "Monomial":
        return cls(((v, e),))

    @classmethod
    def squarefree(cls, vs: Iterable[int]) -> "Monomial":
        return cls((v, 1) for v in set(vs))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.items)

    def exponent(self, v: int) -> int:
        for w, e in self.items:
            if w == v:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def is_one(self) -> bool:
        return not self.items

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            if e > d.get(v, 0):
                d[v] = e
        return Monomial(d)

    def gcd(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        return Monomial((v, min(e, d[v])) for v, e in other.items if v in d)

    def coprime(self, other: "Monomial") -> bool:
        return not (self.support & other.support)

    def divides(self, other: "Monomial") -> bool:
        d = dict(other.items)
        return all(d.get(v, 0) >= e for v, e in self.items)

    def divide(self, other: "Monomial") -> "Monomial":
        """Exact quotient ``self / other``; raises :class:`Indivisible`."""
        d = dict(self.items)
        for v, e in other.items:
            left = d.get(v, 0) - e
            if left < 0:
                raise Indivisible(f"{other} does not divide {self}")
            d[v] = left
        return Monomial(d)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        # canonical (order-free) sorting only; term orders go through LexOrder
        return (self.degree, self.items) < (other.degree, other.items)

    def __str__(self) -> str:
        if not self.items:
            return "1"
        return "*".join(edge_name(v) if e == 1 else f"{edge_name(v)}^{e}" for v, e in self.items)

    def __repr__(self) -> str:
        return f"Monomial({self})"


ONE = Monomial()


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


def divide(a: Monomial, b: Monomial) -> Monomial:
    return a.divide(b)


def parse_monomial(text: str) -> Monomial:
    """Inverse of ``str(Monomial)``: ``"e1*e3^2"`` or ``"1"``."""
    text = text.strip()
    if text == "1":
        return ONE
    d: dict[int, int] = {}
    for factor in text.split("*"):
        base, _, power = factor.partition("^")
        v = parse_edge_name(base)
        d[v] = d.get(v, 0) + (int(power) if power else 1)
    return Monomial(d)


class LexOrder:
    """Lexicographic order given by a priority list, highest variable first."""

    __slots__ = ("priority", "_rank", "_keys")

    def __init__(self, priority: Iterable[int]):
        self.priority = tuple(priority)
        if len(set(self.priority)) != len(self.priority):
            raise ValueError("priority list repeats a variable")
        self._rank = {v: i for i, v in enumerate(self.priority)}
        self._keys: dict[Monomial, tuple[int, ...]] = {}

    @classmethod
    def default(cls, variables: Iterable[int]) -> "LexOrder":
        """e1 > e2 > ... by edge id."""
        return cls(sorted(variables))

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(self.priority)

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Dense exponent vector in priority order; lex order = tuple order."""
        k = self._keys.get(m)
        if k is None:
            vec = [0] * len(self.priority)
            for v, e in m.items:
                try:
                    vec[self._rank[v]] = e
                except KeyError:
                    raise ForeignVariable(f"{edge_name(v)} is not ordered by {self}") from None
            k = self._keys[m] = tuple(vec)
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0, 1 for a < b, a == b, a > b."""
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def restricted(self, variables: Iterable[int]) -> "LexOrder":
        keep = set(variables)
        return LexOrder(v for v in self.priority if v in keep)

    def __eq__(self, other) -> bool:
        return isinstance(other, LexOrder) and self.priority == other.priority

    def __hash__(self) -> int:
        return hash(self.priority)

    def __str__(self) -> str:
        return " > ".join(edge_name(v) for v in self.priority)

    def __repr__(self) -> str:
        return f"LexOrder({self})"


def compare(a: Monomial, b: Monomial, order: LexOrder) -> int:
    return order.compare(a, b)


# the two-term class -------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"

    @property
    def terms(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Mono:
    sign: int
    m: Monomial

    @property
    def lead(self) -> Monomial:
        return self.m

    @property
    def terms(self) -> tuple[tuple[int, Monomial], ...]:
        return ((self.sign, self.m),)

    def monic(self) -> "Mono":
        return self if self.sign == 1 else Mono(1, self.m)

    def __str__(self) -> str:
        return str(self.m) if self.sign == 1 else f"-{self.m}"


@dataclass(frozen=True)
class Bino:
    """``lead - trail`` with ``lead`` larger under the order that built it."""

    lead: Monomial
    trail: Monomial

    @property
    def terms(self) -> tuple[tuple[int, Monomial], ...]:
        return ((1, self.lead), (-1, self.trail))

    def __str__(self) -> str:
        return f"{self.lead} - {self.trail}"


TwoTermPoly = Union[Zero, Mono, Bino]
ZERO = Zero()


def orient(a: Monomial, b: Monomial, order: LexOrder) -> TwoTermPoly:
    """The binomial ``a - b`` up to sign, with its larger term first."""
    c = order.compare(a, b)
    if c == 0:
        return ZERO
    return Bino(a, b) if c > 0 else Bino(b, a)


def monomial_poly(m: Monomial) -> Mono:
    return Mono(1, m)


def reorient(p: TwoTermPoly, order: LexOrder) -> TwoTermPoly:
    return orient(p.lead, p.trail, order) if isinstance(p, Bino) else p


def from_terms(terms: Iterable[tuple[int, Monomial]], order: LexOrder) -> TwoTermPoly:
    """Collect signed terms back into the two-term class.

    Binomials are only known up to a unit, so ``b - a`` comes back as
    ``a - b``; anything else that does not fit raises :class:`ClassEscape`.
    """
    acc: dict[Monomial, int] = {}
    for c, m in terms:
        acc[m] = acc.get(m, 0) + c
    live = [(c, m) for m, c in acc.items() if c]
    if not live:
        return ZERO
    if len(live) == 1:
        c, m = live[0]
        if c not in (1, -1):
            raise ClassEscape(f"coefficient {c} on {m}")
        return Mono(c, m)
    if len(live) == 2:
        (c1, m1), (c2, m2) = live
        if {c1, c2} == {1, -1}:
            return orient(m1, m2, order)
        raise ClassEscape(f"not a pure difference: {c1}*{m1} + {c2}*{m2}")
    raise ClassEscape(f"{len(live)} terms")


def scale(p: TwoTermPoly, m: Monomial) -> TwoTermPoly:
    """Multiply by a monomial (orientation is preserved by lex compatibility)."""
    if isinstance(p, Zero):
        return p
    if isinstance(p, Mono):
        return Mono(p.sign, p.m * m)
    return Bino(p.lead * m, p.trail * m)


def multiply(p: TwoTermPoly, q: TwoTermPoly, order: LexOrder) -> TwoTermPoly:
    """Product inside the class; binomial times binomial escapes it."""
    if isinstance(p, Zero) or isinstance(q, Zero):
        return ZERO
    terms = [(a * c, m * n) for a, m in p.terms for c, n in q.terms]
    return from_terms(terms, order)


def variables_of(p: TwoTermPoly) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for _, m in p.terms:
        out |= m.support
    return out


def render(p: TwoTermPoly) -> str:
    return str(p)


def parse_poly(text: str, order: LexOrder) -> TwoTermPoly:
    """Parse ``"0"``, ``"m"``, ``"-m"`` or ``"m - n"``."""
    text = text.strip()
    if text == "0":
        return ZERO
    if " - " in text:
        a, b = text.split(" - ")
        return orient(parse_monomial(a), parse_monomial(b), order)
    if text.startswith("-"):
        return Mono(-1, parse_monomial(text[1:]))
    return Mono(1, parse_monomial(text))
