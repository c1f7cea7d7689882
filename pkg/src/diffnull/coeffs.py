"""Coefficient fields for differential polynomials.

Two fields are supported: plain rationals (constants, the fast path) and the
rational function field Q(x1, ..., xm) where the j-th derivation acts on
coefficients as d/dx_j.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from sympy import QQ, field as sympy_field


class ConstField:
    """The field Q; every derivation is zero on it."""

    kind = "const"

    def __init__(self, m: int):
        self.m = m
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, ConstField) and other.m == self.m

    def __hash__(self):
        return hash(("const", self.m))

    def __repr__(self):
        return f"ConstField(m={self.m})"

    def convert(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return Fraction(int(value.numerator), int(value.denominator))
        raise TypeError(f"cannot use {value!r} as a rational coefficient")

    def gen(self, j: int):
        raise ValueError("x-variables are not available in constant-coefficient mode")

    def diff(self, c, j: int):
        return self.zero

    def is_constant(self, c) -> bool:
        return True

    def as_rational(self, c) -> Fraction:
        return c

    def text(self, c) -> str:
        return str(c)


class RatFuncField:
    """Q(x1, ..., xm), backed by sympy's sparse fraction field (always reduced)."""

    kind = "ratfunc"

    def __init__(self, m: int):
        self.m = m
        self._K, *self._gens = _sympy_field(m)
        self.zero = self._K.zero
        self.one = self._K.one

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and other.m == self.m

    def __hash__(self):
        return hash(("ratfunc", self.m))

    def __repr__(self):
        return f"RatFuncField(m={self.m})"

    def convert(self, value):
        if isinstance(value, int):
            return self._K(value)
        if isinstance(value, (Fraction, str)):
            value = Fraction(value)
            return self._K.ground_new(QQ(value.numerator, value.denominator))
        if getattr(value, "field", None) == self._K:
            return value
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return self._K.ground_new(QQ(int(value.numerator), int(value.denominator)))
        raise TypeError(f"cannot use {value!r} as a coefficient in Q(x1..x{self.m})")

    def gen(self, j: int):
        if not 1 <= j <= self.m:
            raise ValueError(f"x{j} is out of range for m={self.m}")
        return self._gens[j - 1]

    def diff(self, c, j: int):
        return c.diff(self._gens[j - 1])

    def is_constant(self, c) -> bool:
        return c.denom.is_ground and c.numer.is_ground

    def as_rational(self, c) -> Fraction:
        if not self.is_constant(c):
            raise ValueError(f"coefficient {c} is not constant")
        q = QQ.convert(c.numer.LC) / QQ.convert(c.denom.LC) if c else QQ(0)
        return Fraction(int(q.numerator), int(q.denominator))

    def text(self, c) -> str:
        num, den = c.numer, c.denom
        ns = _poly_text(num)
        if den == 1:
            return ns
        ds = _poly_text(den)
        if not _ATOM.match(ds):
            ds = f"({ds})"
        if len(num.terms()) > 1:
            ns = f"({ns})"
        return f"{ns}/{ds}"


@lru_cache(maxsize=None)
def _sympy_field(m: int):
    names = ",".join(f"x{j}" for j in range(1, m + 1))
    return sympy_field(names, QQ)


def _poly_text(p) -> str:
    # sympy prints "x1**2"; the document grammar uses "^"
    return str(p.as_expr()).replace("**", "^")


_ATOM = re.compile(r"^(\d+|x\d+(\^\d+)?)$")


def make_field(m: int, kind: str = "const"):
    if kind == "const":
        return ConstField(m)
    if kind == "ratfunc":
        return RatFuncField(m)
    raise ValueError(f"unknown coefficient mode {kind!r}")
