"""The linear path: polynomials in X1..Xm translated into linear PDE systems.

``tilde`` maps X^a to d^a y.  Membership of a linear target in a prolonged
linear system is decided by exact row reduction over Q, with pivots taken at
the highest-ranked derivative.  ``min_rep_degree`` is the independent oracle
on the polynomial side: a dense linear solve for cofactors of bounded degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .certify import Certificate, CertRow, PolyCertificate
from .commpoly import Poly, PolyRing, x_ring
from .diffring import DerivOp, DiffPoly, DiffRing, DiffVar, apply_theta, var_key
from .prolong import DiffSystem, theta_set


class NotLinear(ValueError):
    pass


# -- translation -----------------------------------------------------------------

def tilde(f: Poly, i: int = 1, ring: DiffRing | None = None) -> DiffPoly:
    """Replace each monomial X^a of f by d^a y_i."""
    m = f.ring.nvars
    ring = ring or DiffRing(m, max(i, 1))
    if ring.m != m:
        raise ValueError(f"polynomial in {m} variables needs a ring with m={m}, got m={ring.m}")
    terms = {}
    for e, c in f.terms.items():
        terms[((ring.diffvar(i, e), 1),)] = ring.field.convert(c)
    return DiffPoly(ring, terms)


def untilde(g: DiffPoly, ring: PolyRing | None = None) -> Poly:
    """Inverse of :func:`tilde` on linear polynomials in a single indeterminate."""
    ring = ring or x_ring(g.ring.m)
    field = g.ring.field
    indices = set()
    terms = {}
    for mono, c in g.terms.items():
        if len(mono) != 1 or mono[0][1] != 1 or not field.is_constant(c):
            raise NotLinear(f"{g} is not linear with constant coefficients")
        v = mono[0][0]
        indices.add(v.index)
        terms[tuple(v.theta)] = field.as_rational(c)
    if len(indices) > 1:
        raise NotLinear("untilde needs a single differential indeterminate")
    return Poly(ring, terms)


# -- linear systems -----------------------------------------------------------------

@dataclass(frozen=True)
class LinearDiffSystem:
    """Generators that are homogeneous of degree 1 with constant coefficients."""

    system: DiffSystem

    def __post_init__(self):
        for g in self.system:
            if not g.is_linear_homogeneous():
                raise NotLinear(f"generator {g} is not homogeneous linear with constant coefficients")

    @classmethod
    def of(cls, generators) -> "LinearDiffSystem":
        if isinstance(generators, LinearDiffSystem):
            return generators
        if isinstance(generators, DiffSystem):
            return cls(generators)
        return cls(DiffSystem.of(generators))

    @property
    def ring(self) -> DiffRing:
        return self.system.ring

    @property
    def generators(self) -> tuple:
        return self.system.generators

    @property
    def order(self) -> int:
        return self.system.order or 0


def _vector(f: DiffPoly) -> dict:
    field = f.ring.field
    out = {}
    for mono, c in f.terms.items():
        if len(mono) != 1 or mono[0][1] != 1 or not field.is_constant(c):
            raise NotLinear(f"{f} is not homogeneous linear with constant coefficients")
        out[mono[0][0]] = field.as_rational(c)
    return out


@dataclass(frozen=True)
class LinearMatrix:
    rows: list            # list of lists of Fraction
    row_labels: list      # (generator index, theta) per row
    columns: list         # DiffVar per column, highest rank first
    target: list          # coefficient vector of the target

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.columns))


def build_matrix(G, l: int, target: DiffPoly) -> LinearMatrix:
    """One row per (generator, theta) with ord(theta) <= l; columns are derivatives."""
    G = LinearDiffSystem.of(G)
    tvec = _vector(target)
    labels, vecs = [], []
    for gi, g in enumerate(G.generators):
        for theta in theta_set(G.ring.m, l):
            labels.append((gi, theta))
            vecs.append(_vector(apply_theta(g, theta)))
    cols = set(tvec)
    for v in vecs:
        cols.update(v)
    columns = sorted(cols, key=var_key, reverse=True)
    zero = Fraction(0)
    rows = [[v.get(c, zero) for c in columns] for v in vecs]
    return LinearMatrix(rows, labels, columns, [tvec.get(c, zero) for c in columns])


class _Echelon:
    """Incremental row echelon form with pivots at the highest-ranked column.

    Each stored row remembers the combination of input rows it came from.
    """

    def __init__(self):
        self.pivots: dict = {}   # lead DiffVar -> (row, combination), row[lead] == 1

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict, combo: dict | None = None):
        vec = dict(vec)
        combo = dict(combo or {})
        done = {}
        while vec:
            lead = max(vec, key=var_key)
            c = vec[lead]
            piv = self.pivots.get(lead)
            if piv is None:
                done[lead] = vec.pop(lead)
                continue
            prow, pcombo = piv
            for v, a in prow.items():
                s = vec.get(v, 0) - c * a
                if s:
                    vec[v] = s
                else:
                    vec.pop(v, None)
            for lab, a in pcombo.items():
                s = combo.get(lab, 0) - c * a
                if s:
                    combo[lab] = s
                else:
                    combo.pop(lab, None)
        return done, combo

    def add(self, vec: dict, label) -> bool:
        rem, combo = self.reduce(vec, {label: Fraction(1)})
        if not rem:
            return False
        lead = max(rem, key=var_key)
        inv = 1 / rem[lead]
        self.pivots[lead] = ({v: a * inv for v, a in rem.items()},
                             {lab: a * inv for lab, a in combo.items()})
        return True

    def express(self, target: dict):
        """Combination (label -> coefficient) equal to target, or None if outside the span."""
        rem, combo = self.reduce(target, {})
        if rem:
            return None
        return {lab: -a for lab, a in combo.items()}


def _certificate(target: DiffPoly, combo: dict) -> Certificate:
    ring = target.ring
    rows = sorted(combo.items(), key=lambda t: (t[0][0], sum(t[0][1]), tuple(t[0][1])))
    return Certificate(target, tuple(CertRow(gi, DerivOp(theta), ring.const(c)) for (gi, theta), c in rows))


def linear_membership(target: DiffPoly, G, l: int):
    """Is target in the Q-span of theta(g), g in G, ord(theta) <= l?

    Returns ``(member, certificate)``; the certificate is None when not a member.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    G = LinearDiffSystem.of(G)
    ech = _Echelon()
    for gi, g in enumerate(G.generators):
        for theta in theta_set(G.ring.m, l):
            ech.add(_vector(apply_theta(g, theta)), (gi, theta))
    combo = ech.express(_vector(target))
    if combo is None:
        return False, None
    return True, _certificate(target, combo)


@dataclass(frozen=True)
class LinearThreshold:
    order: object                 # smallest l, or None
    certificate: object = None
    ranks: tuple = ()             # rank of the prolonged system for l = 0, 1, ...


def linear_threshold(target: DiffPoly, G, lmax: int) -> LinearThreshold:
    """Incremental search for the smallest l with target in (G)^(l)."""
    if lmax < 0:
        raise ValueError("lmax must be nonnegative")
    G = LinearDiffSystem.of(G)
    tvec = _vector(target)
    ech = _Echelon()
    ranks = []
    for l in range(lmax + 1):
        for theta in theta_set(G.ring.m, l):
            if sum(theta) != l:
                continue
            for gi, g in enumerate(G.generators):
                ech.add(_vector(apply_theta(g, theta)), (gi, theta))
        ranks.append(ech.rank)
        combo = ech.express(tvec)
        if combo is not None:
            return LinearThreshold(l, _certificate(target, combo), tuple(ranks))
    return LinearThreshold(None, None, tuple(ranks))


def min_prolongation_linear(target: DiffPoly, G, lmax: int):
    """Smallest l <= lmax with target in (G)^(l), or None."""
    return linear_threshold(target, G, lmax).order


# -- polynomial oracle ----------------------------------------------------------------

def _solve_cofactors(f: Poly, fs: Sequence[Poly], l: int):
    ring = f.ring
    monos = ring.monomials_up_to(l)
    columns = []   # products X^mu * f_i as term dicts
    labels = []
    for i, fi in enumerate(fs):
        for mu in monos:
            columns.append({tuple(a + b for a, b in zip(mu, e)): c for e, c in fi.terms.items()})
            labels.append((i, mu))
    row_monos = set(f.terms)
    for col in columns:
        row_monos.update(col)
    row_monos = sorted(row_monos)
    ridx = {e: k for k, e in enumerate(row_monos)}
    ncols = len(columns)
    A = [[QQ(0)] * (ncols + 1) for _ in row_monos]
    for j, col in enumerate(columns):
        for e, c in col.items():
            A[ridx[e]][j] = QQ(c.numerator, c.denominator)
    for e, c in f.terms.items():
        A[ridx[e]][ncols] = QQ(c.numerator, c.denominator)
    M = DomainMatrix(A, (len(row_monos), ncols + 1), QQ)
    R, pivots = M.rref()
    if ncols in pivots:
        return None
    sol = [QQ(0)] * ncols
    rows = R.to_list()
    for k, p in enumerate(pivots):
        sol[p] = rows[k][ncols]
    cof = [dict() for _ in fs]
    for (i, mu), v in zip(labels, sol):
        if v:
            cof[i][mu] = Fraction(int(v.numerator), int(v.denominator))
    return [Poly(ring, t) for t in cof]


def representation(f: Poly, fs: Sequence[Poly], l: int):
    """Cofactors g_i with deg g_i <= l and sum g_i f_i = f, as a PolyCertificate (or None)."""
    cof = _solve_cofactors(f, list(fs), l)
    if cof is None:
        return None
    return PolyCertificate(f, tuple(cof))


def min_rep_degree(f: Poly, fs: Sequence[Poly], lmax: int):
    """Smallest l <= lmax such that f = sum g_i f_i with every deg g_i <= l, or None."""
    if lmax < 0:
        raise ValueError("lmax must be nonnegative")
    fs = list(fs)
    for l in range(lmax + 1):
        if _solve_cofactors(f, fs, l) is not None:
            return l
    return None
