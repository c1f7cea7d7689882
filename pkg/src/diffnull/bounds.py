"""Numeric bound formulas: alpha_l, the order threshold T, the main upper bound,
the chain-composition bound, Ackermann growth and the lower-bound families.

All arithmetic is exact.  Values too large to materialise are returned as
:class:`Symbolic` descriptors, governed by a decimal-digit budget.
"""

from __future__ import annotations

import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

DEFAULT_DIGIT_BUDGET = 10**6
_LOG10_2 = math.log10(2)


class BudgetExceeded(ArithmeticError):
    """A value would need more decimal digits than the budget allows."""


class Unsupported(ValueError):
    pass


@dataclass(frozen=True)
class Symbolic:
    """A value described by formula because it is too large to print."""

    text: str
    digits_estimate: object = None

    def __str__(self):
        return self.text


@contextmanager
def _unlimited_digits():
    """Let str() print integers of any length (Python caps it at 4300 digits)."""
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def decimal(v) -> str:
    with _unlimited_digits():
        return str(v)


def alpha(m: int, l: int) -> int:
    """Number of derivative operators of order <= l in m derivations: C(l+m, m)."""
    if m < 1:
        raise ValueError("m must be positive")
    if l < 0:
        return 0
    return comb(l + m, m)


def _magnitude(v: int) -> str:
    if v.bit_length() < 64:
        return str(v)
    return f"2^{v.bit_length() - 1}"


def _check_bits(bits: int, budget: int):
    if bits > budget / _LOG10_2:
        raise BudgetExceeded(f"value with about {_magnitude(bits * 30103 // 100000)} digits exceeds budget {budget}")


def T_value(m: int, n: int, h: int, digit_budget: int = DEFAULT_DIGIT_BUDGET) -> int:
    """Order threshold T^{m,n}_h: h for m = 1, the b_{i,h} tower for m = 2."""
    if n < 1 or h < 0:
        raise ValueError("need n >= 1 and h >= 0")
    if m == 1:
        return h
    if m != 2:
        raise Unsupported(
            "unsupported: general-m recursion defined only in external reference [FS pp. 15-16]")
    if h == 0:
        return 0
    b = 0
    for _ in range(n):
        _check_bits(b + 1, digit_budget)
        b = (1 << (b + 1)) * h + b + 1
    _check_bits(b + 1 + h.bit_length(), digit_budget)
    return (1 << (b + 1)) * h


def T_symbolic(m: int, n: int, h: int) -> str:
    """Closed description of T when it cannot be evaluated."""
    if m == 1:
        return str(h)
    return f"2^(b_{n}+1)*{h}, b_0=0, b_(i+1)=2^(b_i+1)*{h}+b_i+1"


def lemma_order_bound(q: int, ps: Sequence[int]) -> int:
    """1 + p1 + p1*p2 + ... + p1*...*p_(s-1) + q*p1*...*p_s; q itself when s = 0."""
    if q < 0 or any(p < 0 for p in ps):
        raise ValueError("q and all p_i must be nonnegative")
    acc = q
    for p in reversed(ps):
        acc = 1 + acc * p
    return acc


@dataclass
class BoundReport:
    m: int
    n: int
    h: int
    D: int
    c: int
    T: object
    alpha_T_minus_1: object
    alpha_T: object
    exponent: object
    bound: object
    symbolic: str
    comparisons: dict = field(default_factory=dict)

    @property
    def is_numeric(self) -> bool:
        return isinstance(self.bound, int)

    def as_dict(self) -> dict:
        def enc(v):
            return None if v is None else decimal(v)

        return {
            "m": self.m, "n": self.n, "h": self.h, "D": self.D, "c": self.c,
            "T": enc(self.T),
            "alpha_T_minus_1": enc(self.alpha_T_minus_1),
            "alpha_T": enc(self.alpha_T),
            "bound_decimal_or_symbolic": enc(self.bound),
            "numeric": self.is_numeric,
            "symbolic": self.symbolic,
            "comparisons": {k: enc(v) for k, v in self.comparisons.items()},
        }


def main_bound(m: int, n: int, h: int, D: int, c: int = 1,
               digit_budget: int = DEFAULT_DIGIT_BUDGET, compare_ackermann: bool = False) -> BoundReport:
    """(n * alpha_{T-1} * D) ^ (2 ^ (c * n^3 * alpha_T^3)) with T = T_value(m, n, h).

    The O-constant of the exponent is the explicit integer ``c``.  Zero when
    h = 0.  The number is only produced when it fits in ``digit_budget``
    decimal digits; otherwise ``bound`` is a :class:`Symbolic`.
    """
    if m not in (1, 2):
        raise Unsupported(
            "unsupported: general-m recursion defined only in external reference [FS pp. 15-16]")
    if n < 0 or h < 0 or D < 0:
        raise ValueError("n, h, D must be nonnegative")
    if not isinstance(c, int) or c <= 0:
        raise ValueError("the O-constant c must be a positive integer")
    shape = f"(n*alpha_(T-1)*D)^(2^({c}*n^3*alpha_T^3))"
    comparisons = {}
    if compare_ackermann:
        arg = max(n, h, D)
        comparisons[f"A({m + 8},{arg})"] = ackermann(m + 8, arg, digit_budget)
    if h == 0 or n == 0:
        return BoundReport(m, n, h, D, c, 0 if h == 0 else None, 0, 1, None, 0,
                           f"{shape} = 0 (h = 0)" if h == 0 else f"{shape} = 0 (n = 0)",
                           comparisons)
    try:
        T = T_value(m, n, h, digit_budget)
    except BudgetExceeded:
        desc = Symbolic(f"({n}*alpha_(T-1)*{D})^(2^({c}*{n}^3*alpha_T^3)), T = {T_symbolic(m, n, h)}")
        return BoundReport(m, n, h, D, c, Symbolic(T_symbolic(m, n, h)), None, None, None, desc,
                           desc.text, comparisons)
    a_prev, a_T = alpha(m, T - 1), alpha(m, T)
    base = n * a_prev * D
    expo_bits = c * n**3 * a_T**3   # the exponent is 2 ** expo_bits
    form = f"({n}*{a_prev}*{D})^(2^({c}*{n}^3*{a_T}^3))"
    if base <= 1:
        return BoundReport(m, n, h, D, c, T, a_prev, a_T, Symbolic(f"2^{expo_bits}"), base,
                           f"{form} = {base}", comparisons)
    # digits of base ** (2 ** expo_bits) are about 2**expo_bits * log10(base)
    if expo_bits > 4 * digit_budget.bit_length() + 64 or \
            (2**expo_bits) * math.log10(base) > digit_budget:
        desc = Symbolic(form, digits_estimate=f"2^{expo_bits} * log10({base})")
        return BoundReport(m, n, h, D, c, T, a_prev, a_T, Symbolic(f"2^{expo_bits}"), desc,
                           form, comparisons)
    exponent = 2**expo_bits
    return BoundReport(m, n, h, D, c, T, a_prev, a_T, exponent, base**exponent, form, comparisons)


# -- Ackermann ---------------------------------------------------------------------

def _hyper2(level: int, b: int, budget: int):
    """2 [level] b for level >= 1 (1: addition, 2: multiplication, 3: power, 4: tower ...)."""
    if level == 1:
        return 2 + b
    if level == 2:
        return 2 * b
    if level == 3:
        _check_bits(b, budget)
        return 1 << b
    if b == 0:
        return 1
    acc = 2
    for _ in range(b - 1):
        acc = _hyper2(level - 1, acc, budget)
    return acc


def ackermann(i: int, x: int, digit_budget: int = DEFAULT_DIGIT_BUDGET):
    """Ackermann-Peter function A(i, x).

    A(0,x)=x+1, A(i+1,0)=A(i,1), A(i+1,x+1)=A(i,A(i+1,x)).  Evaluated through the
    identity A(i, x) = 2[i](x+3) - 3 with hyperoperation 2[i]; a value beyond the
    digit budget comes back as a :class:`Symbolic`.
    """
    if i < 0 or x < 0:
        raise ValueError("Ackermann arguments must be nonnegative")
    if i == 0:
        return x + 1
    try:
        return _hyper2(i, x + 3, digit_budget) - 3
    except BudgetExceeded:
        arrows = "^" * (i - 2)
        return Symbolic(f"A({i},{x}) = 2{arrows}{x + 3} - 3")


def ackermann_recursive(i: int, x: int, max_steps: int = 10**7) -> int:
    """Literal evaluation of the Ackermann-Peter recursion with an explicit stack."""
    stack = [i]
    steps = 0
    while stack:
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded(f"Ackermann recursion needs more than {max_steps} steps")
        i = stack.pop()
        if i == 0:
            x += 1
        elif x == 0:
            stack.append(i - 1)
            x = 1
        else:
            stack.append(i - 1)
            stack.append(i)
            x -= 1
    return x


# -- lower bounds ---------------------------------------------------------------------

LOWER_BOUND_FAMILIES = ("ex41", "ex42", "ex45", "ex46")


def lower_bound_formula(family: str, d: int = None, h: int = None, n: int = None, m: int = None) -> int:
    """Prolongation order at which the family's certificate appears, as stated for each family."""
    def need(**kw):
        for name, v in kw.items():
            if v is None:
                raise ValueError(f"{family} needs parameter {name}")
            lo = 2 if name == "m" else 1
            if v < lo:
                raise ValueError(f"{family}: parameter {name}={v} must be >= {lo}")

    if family == "ex41":
        need(d=d, n=n, h=h)
        return d**n * h
    if family == "ex42":
        if m is not None and m < 1:
            raise ValueError("ex42: m must be >= 1")
        need(d=d, n=n, h=h)
        return d ** ((m or 1) * n) * h
    if family == "ex45":
        need(m=m, h=h)
        return h ** (m - 1) * (h - 1)
    if family == "ex46":
        need(m=m, n=n, h=h)
        return h ** (n * (m - 1)) * (h - 1)
    raise ValueError(f"unknown family {family!r}; choose from {LOWER_BOUND_FAMILIES}")
