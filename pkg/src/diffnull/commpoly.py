"""Commutative multivariate polynomials over a coefficient field.

Used for snapshot rings (variables z_{i,theta}), the X1..Xm rings of the
linear module, and Rabinowitsch extensions.  Monomials are exponent tuples
indexed by the ring's variable list, which is ordered by decreasing priority:
variable 0 is the largest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Hashable

from .coeffs import ConstField

ORDERS = ("grevlex", "lex")


def heap_key(order: str) -> Callable[[tuple], tuple]:
    """Key under which *smaller* means a *larger* monomial for ``order``."""
    if order == "grevlex":
        return lambda e: (-sum(e), e[::-1])
    if order == "lex":
        return lambda e: tuple(-a for a in e)
    raise ValueError(f"unknown monomial order {order!r}; choose from {ORDERS}")


def ascending_key(order: str) -> Callable[[tuple], tuple]:
    """Key under which smaller means a smaller monomial for ``order``."""
    if order == "grevlex":
        return lambda e: (sum(e), tuple(-a for a in reversed(e)))
    if order == "lex":
        return lambda e: e
    raise ValueError(f"unknown monomial order {order!r}; choose from {ORDERS}")


def default_label_text(label) -> str:
    return str(label)


@dataclass(frozen=True)
class PolyRing:
    labels: tuple
    field: object = ConstField(1)
    order: str = "grevlex"
    label_text: Callable = default_label_text

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate variable labels")
        heap_key(self.order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.labels == other.labels
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.labels, self.field, self.order))

    @property
    def nvars(self) -> int:
        return len(self.labels)

    def index(self, label: Hashable) -> int:
        try:
            return self._index_map()[label]
        except KeyError:
            raise KeyError(f"{label!r} is not a variable of this ring") from None

    def _index_map(self) -> dict:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {lab: k for k, lab in enumerate(self.labels)}
            object.__setattr__(self, "_idx", cache)
        return cache

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, label) -> "Poly":
        e = [0] * self.nvars
        e[self.index(label)] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> list:
        return [self.gen(lab) for lab in self.labels]

    def monomials_up_to(self, degree: int) -> list:
        """All exponent tuples of total degree <= degree."""
        out = []
        for d in range(degree + 1):
            for combo in combinations_with_replacement(range(self.nvars), d):
                e = [0] * self.nvars
                for k in combo:
                    e[k] += 1
                out.append(tuple(e))
        return out

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.labels, self.field, order, self.label_text)

    def extend(self, label, last: bool = True) -> "PolyRing":
        """Ring with one more variable (lowest priority by default)."""
        labels = self.labels + (label,) if last else (label,) + self.labels
        return PolyRing(labels, self.field, self.order, self.label_text)

    def embed(self, p: "Poly", target: "PolyRing") -> "Poly":
        """Map p into a ring containing all of this ring's labels."""
        pos = [target.index(lab) for lab in self.labels]
        terms = {}
        for e, c in p.terms.items():
            ne = [0] * target.nvars
            for k, a in zip(pos, e):
                ne[k] = a
            terms[tuple(ne)] = c
        return Poly(target, terms)


class Poly:
    """Immutable polynomial: dict exponent-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                s = terms.get(e, 0) + ca * cb
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    @property
    def degree(self):
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def degree_in(self, label) -> int:
        k = self.ring.index(label)
        return max((e[k] for e in self.terms), default=0)

    def sorted_terms(self) -> list:
        key = heap_key(self.ring.order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def leading_monomial(self):
        if not self.terms:
            return None
        return min(self.terms, key=heap_key(self.ring.order))

    def leading_coefficient(self):
        lm = self.leading_monomial()
        return None if lm is None else self.terms[lm]

    def monic(self) -> "Poly":
        lc = self.leading_coefficient()
        if lc is None:
            return self
        inv = 1 / lc
        return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})

    def evaluate(self, point: dict):
        """Evaluate at a mapping label -> value (missing labels default to 0)."""
        total = 0
        for e, c in self.terms.items():
            t = c
            for lab, a in zip(self.ring.labels, e):
                if a:
                    t = t * point.get(lab, 0) ** a
            total = total + t
        return total

    def __repr__(self):
        return f"Poly({poly_text(self)!r})"

    def __str__(self):
        return poly_text(self)


def poly_text(p: Poly) -> str:
    if not p.terms:
        return "0"
    field = p.ring.field
    pieces = []
    for e, c in p.sorted_terms():
        factors = []
        for lab, a in zip(p.ring.labels, e):
            if a:
                s = p.ring.label_text(lab)
                factors.append(s if a == 1 else f"{s}^{a}")
        if field.is_constant(c):
            q = field.as_rational(c)
            neg, ctext = q < 0, str(abs(q))
        else:
            neg, ctext = False, f"({field.text(c)})"
        if not factors:
            body = ctext
        elif ctext == "1":
            body = "*".join(factors)
        else:
            body = "*".join([ctext] + factors)
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def x_ring(m: int, order: str = "grevlex") -> PolyRing:
    """Q[X1, ..., Xm] with X1 > ... > Xm."""
    return PolyRing(tuple(f"X{j}" for j in range(1, m + 1)), ConstField(m), order)


def rational(c) -> Fraction:
    return Fraction(c)
