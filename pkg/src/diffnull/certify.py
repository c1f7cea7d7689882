"""Membership certificates and their verification by symbolic expansion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .commpoly import Poly
from .diffring import DerivOp, DiffPoly, DiffRing, apply_theta, rank_key


@dataclass(frozen=True)
class CertRow:
    gen: int          # 0-based generator index
    theta: DerivOp
    coeff: DiffPoly


@dataclass(frozen=True)
class Certificate:
    """A claim target = sum(coeff * theta(g_gen)) over the rows."""

    target: DiffPoly
    rows: tuple

    @property
    def ring(self) -> DiffRing:
        return self.target.ring

    def max_order(self):
        return max((r.theta.order for r in self.rows), default=None)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    max_order: dict = field(default_factory=dict)   # generator index -> max ord(theta)
    residual: DiffPoly = None

    @property
    def overall_order(self):
        return max(self.max_order.values(), default=None)

    def __bool__(self):
        return self.ok


def make_certificate(target: DiffPoly, rows) -> Certificate:
    """Build a certificate from ``(gen, theta, coeff)`` triples; coeffs may be scalars."""
    ring = target.ring
    out = []
    for gen, theta, coeff in rows:
        if not isinstance(coeff, DiffPoly):
            coeff = ring.const(coeff)
        out.append(CertRow(int(gen), DerivOp(theta), coeff))
    return Certificate(target, tuple(out))


def expand(cert: Certificate, system) -> DiffPoly:
    gens = list(system)
    total = cert.ring.zero()
    for row in cert.rows:
        if not 0 <= row.gen < len(gens):
            raise IndexError(f"certificate row refers to generator {row.gen}, system has {len(gens)}")
        total = total + row.coeff * apply_theta(gens[row.gen], row.theta)
    return total


def verify(cert, system) -> VerifyReport:
    """Check a certificate by expansion.

    ``cert`` is a :class:`Certificate` against a differential system, or a
    :class:`PolyCertificate` against a list of commutative polynomials.
    """
    if isinstance(cert, PolyCertificate):
        return cert.verify(system)
    gens = list(system)
    if any(g.ring != cert.ring for g in gens):
        raise ValueError("certificate and system live in different rings")
    residual = expand(cert, gens) - cert.target
    orders: dict = {}
    for row in cert.rows:
        orders[row.gen] = max(orders.get(row.gen, 0), row.theta.order)
    return VerifyReport(residual.is_zero(), dict(sorted(orders.items())), residual)


@dataclass(frozen=True)
class PolyCertificate:
    """Cofactors g_i with sum(g_i * f_i) = target in a commutative ring."""

    target: Poly
    cofactors: tuple

    def verify(self, fs: Sequence[Poly]) -> VerifyReport:
        fs = list(fs)
        if len(fs) != len(self.cofactors):
            raise IndexError(f"{len(self.cofactors)} cofactors for {len(fs)} generators")
        total = self.target.ring.zero()
        for g, f in zip(self.cofactors, fs):
            total = total + g * f
        residual = total - self.target
        degs = {k: (g.degree if g.degree is not None else 0) for k, g in enumerate(self.cofactors)}
        return VerifyReport(residual.is_zero(), degs, residual)

    def max_degree(self) -> int:
        return max((g.degree or 0) for g in self.cofactors)


def leibniz_power_check(D, p: int):
    """Expand D^p(y^p) in K{y} and split off the (D y)^p term.

    Returns ``(c, holds)``: c is the coefficient of (D y)^p and ``holds`` says
    that every other monomial has a factor theta(y) with theta strictly below D
    in the ranking.
    """
    D = DerivOp(D)
    if p < 1:
        raise ValueError("p must be >= 1")
    ring = DiffRing(len(D), 1)
    y = ring.y(1)
    expanded = apply_theta(y**p, tuple(p * e for e in D))
    lead = ((ring.diffvar(1, D), p),)
    c = expanded.coeff(lead)
    dkey = rank_key(D)
    holds = True
    for mono in expanded.terms:
        if mono == lead:
            continue
        if not any(rank_key(v.theta) < dkey for v, _ in mono):
            holds = False
            break
    return Fraction(c), holds
