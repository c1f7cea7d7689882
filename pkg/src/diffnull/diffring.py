"""Differential polynomial rings K{y1, ..., yn} with m commuting derivations.

K is either Q or Q(x1, ..., xm) (see :mod:`diffnull.coeffs`).  Values are
immutable; every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

from .coeffs import make_field


class DerivOp(tuple):
    """A derivative operator d1^i1 ... dm^im, stored as its exponent tuple."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative derivative exponent in {exps}")
        return super().__new__(cls, exps)

    @classmethod
    def identity(cls, m: int) -> "DerivOp":
        return cls((0,) * m)

    @classmethod
    def unit(cls, m: int, j: int, power: int = 1) -> "DerivOp":
        """d_j^power for 1 <= j <= m."""
        if not 1 <= j <= m:
            raise ValueError(f"derivation index {j} out of range 1..{m}")
        e = [0] * m
        e[j - 1] = power
        return cls(e)

    @property
    def order(self) -> int:
        return sum(self)

    def compose(self, other: Iterable[int]) -> "DerivOp":
        other = tuple(other)
        if len(other) != len(self):
            raise ValueError(f"arity mismatch: {len(self)} vs {len(other)}")
        return DerivOp(a + b for a, b in zip(self, other))

    def __repr__(self):
        return f"DerivOp({tuple(self)})"


def rank_key(theta) -> tuple:
    """Sort key of the orderly ranking: total order first, then lex with d1 > ... > dm."""
    return (sum(theta), tuple(theta))


def compare_rank(a, b) -> int:
    """Return -1, 0 or 1 as a is below, equal to or above b in the ranking."""
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    ka, kb = rank_key(a), rank_key(b)
    return (ka > kb) - (ka < kb)


class DiffVar(NamedTuple):
    """The derivative theta(y_index); indeterminates are numbered from 1."""

    index: int
    theta: DerivOp

    @property
    def order(self) -> int:
        return sum(self.theta)


def var_key(v) -> tuple:
    """Ranking-then-index key on derivative variables."""
    return (sum(v[1]), tuple(v[1]), v[0])


@dataclass(frozen=True)
class DiffRing:
    """Signature of a ring K{y1..yn} with m derivations.

    ``coeffs`` is ``"const"`` for K = Q or ``"ratfunc"`` for K = Q(x1..xm).
    """

    m: int
    n: int
    coeffs: str = "const"

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"need m >= 1 and n >= 1, got m={self.m}, n={self.n}")
        if self.coeffs not in ("const", "ratfunc"):
            raise ValueError(f"unknown coefficient mode {self.coeffs!r}")

    @property
    def field(self):
        return _field(self.m, self.coeffs)

    def zero(self) -> "DiffPoly":
        return DiffPoly(self, {})

    def one(self) -> "DiffPoly":
        return self.const(1)

    def const(self, c) -> "DiffPoly":
        c = self.field.convert(c)
        return DiffPoly(self, {(): c} if c else {})

    def x(self, j: int) -> "DiffPoly":
        """The coefficient x_j (only in ``ratfunc`` mode)."""
        return DiffPoly(self, {(): self.field.gen(j)})

    def y(self, i: int = 1, theta=None) -> "DiffPoly":
        """theta(y_i) as a polynomial; theta defaults to the identity."""
        return DiffPoly(self, {((self.diffvar(i, theta), 1),): self.field.one})

    def diffvar(self, i: int, theta=None) -> DiffVar:
        if not 1 <= i <= self.n:
            raise ValueError(f"indeterminate y{i} out of range 1..{self.n}")
        theta = DerivOp.identity(self.m) if theta is None else DerivOp(theta)
        if len(theta) != self.m:
            raise ValueError(f"derivative {tuple(theta)} needs exactly {self.m} exponents")
        return DiffVar(i, theta)

    def with_indeterminates(self, n: int) -> "DiffRing":
        return DiffRing(self.m, n, self.coeffs)


@lru_cache(maxsize=None)
def _field(m: int, kind: str):
    return make_field(m, kind)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda t: var_key(t[0])))


def _mono_sort_key(mono: tuple) -> tuple:
    # degrevlex over the ranking-then-index variable order
    return (sum(e for _, e in mono), tuple((var_key(v), -e) for v, e in mono))


class DiffPoly:
    """A differential polynomial: a finite map monomial -> nonzero coefficient.

    A monomial is a tuple of ``(DiffVar, exponent)`` pairs sorted by
    :func:`var_key`; the empty tuple is the constant monomial.
    """

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: DiffRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- construction helpers -------------------------------------------------

    def _coerce(self, other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return DiffPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly(self.ring, {mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = _mono_mul(ma, mb)
                s = terms.get(mono, 0) + ca * cb
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        return DiffPoly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "DiffPoly":
        c = self.ring.field.convert(c)
        if not c:
            return self.ring.zero()
        return DiffPoly(self.ring, {mono: c * a for mono, a in self.terms.items()})

    def __truediv__(self, other):
        other = self._coerce(other)
        c = other.coefficient_value()
        if c is None:
            raise TypeError("can only divide by a coefficient")
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_value(self):
        """The coefficient if this is a pure coefficient (no y-factors), else None."""
        if not self.terms:
            return self.ring.field.zero
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def monomials(self) -> list:
        """Monomials in canonical (degrevlex, descending) order."""
        return sorted(self.terms, key=_mono_sort_key, reverse=True)

    def coeff(self, mono) -> object:
        return self.terms.get(tuple(mono), self.ring.field.zero)

    def variables(self) -> set:
        return {v for mono in self.terms for v, _ in mono}

    @cached_property
    def order(self):
        """Maximal order of a derivative occurring in self; None if there is none."""
        orders = [sum(v[1]) for mono in self.terms for v, _ in mono]
        return max(orders) if orders else None

    @cached_property
    def degree(self):
        """Total degree in the derivative variables; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e for _, e in mono) for mono in self.terms)

    def is_linear_homogeneous(self) -> bool:
        field = self.ring.field
        return all(
            len(mono) == 1 and mono[0][1] == 1 and field.is_constant(c)
            for mono, c in self.terms.items()
        )

    def __repr__(self):
        return f"DiffPoly({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def measures(f: DiffPoly) -> tuple:
    """(total order, total degree); the order is None when no derivative occurs."""
    return f.order, f.degree


def differentiate(f: DiffPoly, j: int) -> DiffPoly:
    """Apply the j-th derivation (1-based)."""
    ring = f.ring
    if not 1 <= j <= ring.m:
        raise ValueError(f"derivation index {j} out of range 1..{ring.m}")
    field = ring.field
    shift = DerivOp.unit(ring.m, j)
    terms: dict = {}

    def add(mono, c):
        s = terms.get(mono, 0) + c
        if s:
            terms[mono] = s
        else:
            terms.pop(mono, None)

    for mono, c in f.terms.items():
        if field.kind != "const":
            dc = field.diff(c, j)
            if dc:
                add(mono, dc)
        for pos, (v, e) in enumerate(mono):
            dv = DiffVar(v.index, v.theta.compose(shift))
            rest = mono[:pos] + ((v, e - 1),) + mono[pos + 1:] if e > 1 else mono[:pos] + mono[pos + 1:]
            add(_mono_mul(rest, ((dv, 1),)), c * e)
    return DiffPoly(ring, terms)


def apply_theta(f: DiffPoly, theta) -> DiffPoly:
    """theta(f) for a derivative operator theta given as an exponent tuple."""
    theta = tuple(theta)
    if len(theta) != f.ring.m:
        raise ValueError(f"arity mismatch: operator {theta} for m={f.ring.m}")
    for j, k in enumerate(theta, start=1):
        for _ in range(k):
            f = differentiate(f, j)
    return f


# -- text rendering -----------------------------------------------------------

def var_text(v: DiffVar) -> str:
    if not any(v.theta):
        return f"y{v.index}"
    return f"y{v.index}[{','.join(str(e) for e in v.theta)}]"


def var_pretty(v: DiffVar) -> str:
    ops = []
    for j, e in enumerate(v.theta, start=1):
        if e == 1:
            ops.append(f"d{j}")
        elif e > 1:
            ops.append(f"d{j}^{e}")
    return " ".join(ops + [f"y{v.index}"])


def _coeff_parts(field, c) -> tuple:
    """(negative?, text) for a coefficient; text needs no parentheses as a factor."""
    if field.is_constant(c):
        q = field.as_rational(c)
        return q < 0, str(abs(q))
    text = field.text(c)
    if any(ch in text.lstrip("-") for ch in "+-") or text.startswith("-"):
        return False, f"({text})"
    return False, text


def to_text(f: DiffPoly, pretty: bool = False) -> str:
    """Render f in the document grammar (or with d1, d2, ... operators if pretty)."""
    if not f.terms:
        return "0"
    vt = var_pretty if pretty else var_text
    mul = " " if pretty else "*"
    pieces = []
    for mono in f.monomials():
        neg, ctext = _coeff_parts(f.ring.field, f.terms[mono])
        factors = []
        for v, e in reversed(mono):
            s = vt(v)
            if pretty and e > 1 and any(v.theta):
                s = f"({s})"
            factors.append(s if e == 1 else f"{s}^{e}")
        if not mono:
            body = ctext
        elif ctext == "1":
            body = mul.join(factors)
        else:
            body = mul.join([ctext] + factors)
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out
