"""Prolongation of differential systems and their commutative snapshots."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .commpoly import Poly, PolyRing
from .diffring import DerivOp, DiffPoly, DiffRing, DiffVar, apply_theta, rank_key, var_key


@dataclass(frozen=True)
class DiffSystem:
    """A finite system F = f1, ..., fr of differential polynomials over one ring."""

    ring: DiffRing
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a differential system needs at least one generator")
        for g in gens:
            if not isinstance(g, DiffPoly) or g.ring != self.ring:
                raise ValueError(f"generator {g!r} does not belong to {self.ring}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, generators: Sequence[DiffPoly]) -> "DiffSystem":
        generators = tuple(generators)
        if not generators:
            raise ValueError("a differential system needs at least one generator")
        return cls(generators[0].ring, generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, k):
        return self.generators[k]

    @property
    def order(self):
        """Maximal order over the generators; None when no derivative occurs at all."""
        orders = [g.order for g in self.generators if g.order is not None]
        return max(orders) if orders else None

    @property
    def degree(self):
        degs = [g.degree for g in self.generators if g.degree is not None]
        return max(degs) if degs else None


@lru_cache(maxsize=None)
def _theta_set(m: int, k: int) -> tuple:
    thetas = [DerivOp(t) for t in product(range(k + 1), repeat=m) if sum(t) <= k]
    thetas.sort(key=rank_key)
    return tuple(thetas)


def theta_set(m: int, k: int) -> list:
    """All derivative operators of order <= k, ascending in the ranking."""
    if m < 1:
        raise ValueError("m must be positive")
    if k < 0:
        return []
    return list(_theta_set(m, k))


def prolong(F: DiffSystem, k: int) -> DiffSystem:
    """F^(k): every theta(f) with f in F and ord(theta) <= k, zeros and duplicates dropped.

    Generators are listed f-major, theta in ascending rank, first occurrence kept.
    """
    if k < 0:
        raise ValueError("prolongation order must be nonnegative")
    seen = set()
    out = []
    for f in F.generators:
        for theta in _theta_set(F.ring.m, k):
            g = apply_theta(f, theta)
            if g and g not in seen:
                seen.add(g)
                out.append(g)
    if not out:
        out = [F.ring.zero()]
    return DiffSystem(F.ring, tuple(out))


# -- snapshots ------------------------------------------------------------------

def z_text(v: DiffVar) -> str:
    return f"z{v.index}[{','.join(str(e) for e in v.theta)}]"


@lru_cache(maxsize=None)
def snapshot_ring(ring: DiffRing, l: int, order: str = "grevlex") -> PolyRing:
    """K[z_{i,theta} : ord(theta) <= l]; variables sorted highest rank first."""
    labels = [DiffVar(i, theta) for theta in _theta_set(ring.m, l) for i in range(1, ring.n + 1)]
    labels.sort(key=var_key, reverse=True)
    return PolyRing(tuple(labels), ring.field, order, z_text)


def snapshot(f, l: int, order: str = "grevlex"):
    """Flatten a DiffPoly (or every generator of a DiffSystem) into the snapshot ring R_l."""
    if isinstance(f, DiffSystem):
        return [snapshot(g, l, order) for g in f.generators]
    ring = snapshot_ring(f.ring, l, order)
    if f.order is not None and f.order > l:
        raise ValueError(f"polynomial of order {f.order} does not fit in snapshot cap {l}")
    idx = ring._index_map()
    nv = ring.nvars
    terms = {}
    for mono, c in f.terms.items():
        e = [0] * nv
        for v, a in mono:
            e[idx[v]] = a
        terms[tuple(e)] = c
    return Poly(ring, terms)


def unsnapshot(p: Poly, ring: DiffRing) -> DiffPoly:
    """Inverse of :func:`snapshot` on its image."""
    terms = {}
    for e, c in p.terms.items():
        mono = tuple(sorted(((lab, a) for lab, a in zip(p.ring.labels, e) if a),
                            key=lambda t: var_key(t[0])))
        terms[mono] = c
    return DiffPoly(ring, terms)
