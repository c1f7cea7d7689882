"""Ideal computations in commutative snapshot rings.

Buchberger's algorithm (Gebauer-Moeller pair update, sugar selection,
final inter-reduction) with explicit resource guards: exceeding a guard raises
:class:`ResourceExceeded` instead of returning a possibly wrong answer.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    mpq = None

from .commpoly import Poly, PolyRing, ascending_key, heap_key
from .prolong import DiffSystem, prolong, snapshot

DEFAULT_MAX_DEGREE = 40
DEFAULT_MAX_BASIS = 5000


class ResourceExceeded(RuntimeError):
    """A guard tripped; the computation was abandoned without an answer."""

    def __init__(self, message: str, decided_up_to=None):
        super().__init__(message)
        self.decided_up_to = decided_up_to


@dataclass(frozen=True)
class Guard:
    max_degree: int = DEFAULT_MAX_DEGREE
    max_basis: int = DEFAULT_MAX_BASIS


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of an ideal of ``ring`` (monic, sorted by leading monomial)."""

    ring: PolyRing
    polys: tuple
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def order(self) -> str:
        return self.ring.order

    def is_unit(self) -> bool:
        return any(p.is_constant() and p for p in self.polys)

    def leading_monomials(self) -> list:
        return [p.leading_monomial() for p in self.polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self).is_zero()


# -- coefficient conversion ---------------------------------------------------------
# Q coefficients run through gmpy2.mpq inside the engine; other fields run as they are.

def _use_mpq(ring: PolyRing) -> bool:
    return mpq is not None and ring.field.kind == "const"


def _to_engine(ring: PolyRing, terms: dict) -> dict:
    if _use_mpq(ring):
        return {e: mpq(c.numerator, c.denominator) for e, c in terms.items()}
    return dict(terms)


def _from_engine(ring: PolyRing, terms: dict) -> Poly:
    if _use_mpq(ring):
        return Poly(ring, {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in terms.items()})
    return Poly(ring, terms)


# -- monomial helpers ----------------------------------------------------------------

def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _mask(e: tuple) -> int:
    m = 0
    for k, a in enumerate(e):
        if a:
            m |= 1 << k
    return m


class _Engine:
    """Mutable state of one Buchberger run over raw term dicts."""

    def __init__(self, ring: PolyRing, guard: Guard):
        self.ring = ring
        self.guard = guard
        self.key = heap_key(ring.order)
        self.up = ascending_key(ring.order)
        self.polys: list = []   # monic term dicts
        self.lms: list = []
        self.masks: list = []
        self.sugar: list = []
        self.active: list = []  # indices forming the current basis
        self.reductions = 0

    def lm(self, terms: dict) -> tuple:
        return min(terms, key=self.key)

    def monic(self, terms: dict) -> dict:
        lc = terms[self.lm(terms)]
        if lc == 1:
            return terms
        inv = 1 / lc
        return {e: c * inv for e, c in terms.items()}

    def find_divisor(self, e: tuple, emask: int, candidates):
        for k in candidates:
            if self.masks[k] & ~emask == 0 and _divides(self.lms[k], e):
                return k
        return None

    def reduce(self, terms: dict, candidates, full: bool = True) -> dict:
        """Normal form of ``terms`` modulo the polynomials indexed by ``candidates``."""
        key = self.key
        f = dict(terms)
        heap = [(key(e), e) for e in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = f.get(e)
            if c is None:
                continue
            k = self.find_divisor(e, _mask(e), candidates)
            if k is None:
                rem[e] = f.pop(e)
                if not full:
                    rem.update(f)
                    return rem
                continue
            del f[e]
            self.reductions += 1
            lm = self.lms[k]
            q = tuple(a - b for a, b in zip(e, lm))
            for ge, gc in self.polys[k].items():
                if ge == lm:
                    continue
                ne = tuple(a + b for a, b in zip(q, ge))
                old = f.get(ne)
                if old is None:
                    f[ne] = -c * gc
                    heapq.heappush(heap, (key(ne), ne))
                else:
                    s = old - c * gc
                    if s:
                        f[ne] = s
                    else:
                        del f[ne]
        return rem

    def add(self, terms: dict, sugar: int) -> int:
        terms = self.monic(terms)
        deg = max(sum(e) for e in terms)
        if deg > self.guard.max_degree:
            raise ResourceExceeded(
                f"basis element of degree {deg} exceeds max_degree={self.guard.max_degree}")
        if len(self.polys) >= self.guard.max_basis:
            raise ResourceExceeded(
                f"basis size exceeds max_basis={self.guard.max_basis}")
        lm = self.lm(terms)
        self.polys.append(terms)
        self.lms.append(lm)
        self.masks.append(_mask(lm))
        self.sugar.append(max(sugar, deg))
        return len(self.polys) - 1

    def spoly(self, i: int, j: int):
        lcm = _lcm(self.lms[i], self.lms[j])
        out: dict = {}
        for idx, sign in ((i, 1), (j, -1)):
            q = tuple(a - b for a, b in zip(lcm, self.lms[idx]))
            for e, c in self.polys[idx].items():
                ne = tuple(a + b for a, b in zip(q, e))
                s = out.get(ne, 0) + sign * c
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        sugar = max(self.sugar[i] + sum(lcm) - sum(self.lms[i]),
                    self.sugar[j] + sum(lcm) - sum(self.lms[j]))
        return out, sugar

    def pair_key(self, i: int, j: int) -> tuple:
        lcm = _lcm(self.lms[i], self.lms[j])
        sugar = max(self.sugar[i] + sum(lcm) - sum(self.lms[i]),
                    self.sugar[j] + sum(lcm) - sum(self.lms[j]))
        up = self.up(lcm)
        if self.ring.order == "lex":
            # normal strategy; sugar steers lex runs into high-degree detours
            return (up, sugar, i, j)
        return (sugar, up, i, j)

    def update(self, pairs: set, h: int) -> set:
        """Gebauer-Moeller installation of the new element h (criteria 1 and 2)."""
        lms = self.lms
        lh = lms[h]
        cands = [(h, g) for g in self.active]
        kept = []
        while cands:
            p = cands.pop()
            g = p[1]
            lcm_hg = _lcm(lh, lms[g])
            if _coprime(lh, lms[g]):
                kept.append(p)
                continue
            redundant = False
            for q in cands + kept:
                if _divides(_lcm(lh, lms[q[1]]), lcm_hg):
                    redundant = True
                    break
            if not redundant:
                kept.append(p)
        new_pairs = {tuple(sorted(p)) for p in kept if not _coprime(lh, lms[p[1]])}
        for g1, g2 in pairs:
            lcm12 = _lcm(lms[g1], lms[g2])
            if (_divides(lh, lcm12)
                    and _lcm(lms[g1], lh) != lcm12
                    and _lcm(lms[g2], lh) != lcm12):
                continue
            new_pairs.add((g1, g2))
        self.active = [g for g in self.active if not _divides(lh, lms[g])] + [h]
        return new_pairs

    def run(self, inputs: list):
        """Compute a Groebner basis; returns early with [1] for the unit ideal."""
        pairs: set = set()
        queue: list = []
        inputs = sorted((t for t in inputs if t), key=lambda t: (max(sum(e) for e in t), self.key(self.lm(t))))
        for terms in inputs:
            h = self.reduce(terms, self.active)
            if not h:
                continue
            k = self.add(h, max(sum(e) for e in terms))
            if self._is_unit(k):
                return True
            pairs = self.update(pairs, k)
        queue = [self.pair_key(i, j) for i, j in pairs]
        heapq.heapify(queue)
        live = set(pairs)
        while queue:
            _, _, i, j = heapq.heappop(queue)
            if (i, j) not in live:
                continue
            live.discard((i, j))
            s, sugar = self.spoly(i, j)
            if not s:
                continue
            h = self.reduce(s, self.active)
            if not h:
                continue
            k = self.add(h, sugar)
            if self._is_unit(k):
                return True
            new_live = self.update(live, k)
            for p in new_live - live:
                heapq.heappush(queue, self.pair_key(*p))
            live = new_live
        return False

    def _is_unit(self, k: int) -> bool:
        return not any(self.lms[k])

    def reduced_basis(self) -> list:
        basis = [k for k in self.active
                 if not any(o != k and _divides(self.lms[o], self.lms[k]) for o in self.active)]
        out = []
        for k in basis:
            others = [o for o in basis if o != k]
            lm = self.lms[k]
            tail = {e: c for e, c in self.polys[k].items() if e != lm}
            red = self.reduce(tail, others)
            red[lm] = self.polys[k][lm]
            out.append(red)
        out.sort(key=lambda t: self.key(self.lm(t)))
        return out


def _check_ring(polys: Sequence[Poly]) -> PolyRing:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise ValueError("all polynomials must belong to the same ring")
    return rings.pop()


def groebner_basis(G: Sequence[Poly], order: str | None = None, guard: Guard | None = None,
                   ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by G.

    ``order`` overrides the ring's monomial order ('grevlex' or 'lex').
    """
    G = list(G)
    if ring is None:
        if not G:
            raise ValueError("empty generator list needs an explicit ring")
        ring = _check_ring(G)
    elif G and _check_ring(G) != ring:
        raise ValueError("generators do not belong to the given ring")
    if order is not None and order != ring.order:
        target = ring.with_order(order)
        G = [Poly(target, p.terms) for p in G]
        ring = target
    eng = _Engine(ring, guard or Guard())
    unit = eng.run([_to_engine(ring, p.terms) for p in G])
    if unit:
        polys = (ring.one(),)
    else:
        polys = tuple(_from_engine(ring, t) for t in eng.reduced_basis())
    return GroebnerBasis(ring, polys, {"considered": len(eng.polys), "reductions": eng.reductions})


def normal_form(f: Poly, B: GroebnerBasis) -> Poly:
    """Remainder of f on division by B; no term of it is divisible by a leading monomial of B."""
    if f.ring != B.ring:
        if f.ring.labels == B.ring.labels and f.ring.field == B.ring.field:
            f = Poly(B.ring, f.terms)
        else:
            raise ValueError("polynomial and basis live in different rings")
    eng = _Engine(B.ring, Guard(max_degree=10**9, max_basis=10**9))
    for p in B.polys:
        t = _to_engine(B.ring, p.terms)
        eng.polys.append(t)
        lm = eng.lm(t)
        eng.lms.append(lm)
        eng.masks.append(_mask(lm))
        eng.sugar.append(0)
    rem = eng.reduce(_to_engine(B.ring, f.terms), range(len(eng.polys)))
    return _from_engine(B.ring, rem)


def ideal_membership(f: Poly, G: Sequence[Poly], guard: Guard | None = None) -> bool:
    """Decide f in (G)."""
    if f.is_zero():
        return True
    G = list(G)
    B = groebner_basis(G, guard=guard, ring=f.ring)
    return normal_form(f, B).is_zero()


class _RabinowitschVar(str):
    """Label of the adjoined variable t; distinct from every snapshot label."""


RABINOWITSCH_T = _RabinowitschVar("t")


def radical_membership(f: Poly, G: Sequence[Poly], guard: Guard | None = None) -> bool:
    """Decide f in sqrt((G)) via 1 in (G, 1 - t*f) with a fresh variable t."""
    ring = f.ring
    ext = ring.extend(RABINOWITSCH_T)
    t = ext.gen(RABINOWITSCH_T)
    gens = [ring.embed(g, ext) for g in G] + [1 - t * ring.embed(f, ext)]
    return ideal_membership(ext.one(), gens, guard)


def is_inconsistent(F: DiffSystem, k: int, guard: Guard | None = None) -> bool:
    """True iff 1 lies in the ideal generated by the snapshot of F^(k)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    cap = (F.order or 0) + k
    P = prolong(F, k)
    polys = snapshot(P, cap)
    return ideal_membership(polys[0].ring.one(), polys, guard)


def consistency_profile(F: DiffSystem, kmax: int, guard: Guard | None = None):
    """Smallest k <= kmax with 1 in (F^(k)), or None if there is none up to kmax.

    A tripped guard is re-raised with ``decided_up_to`` set to the largest k
    that was fully decided (-1 if none).
    """
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    for k in range(kmax + 1):
        try:
            if is_inconsistent(F, k, guard):
                return k
        except ResourceExceeded as exc:
            raise ResourceExceeded(f"at k={k}: {exc}", decided_up_to=k - 1) from exc
    return None


def dimension(G: Sequence[Poly], guard: Guard | None = None, ring: PolyRing | None = None) -> int:
    """Krull dimension of (G); -1 for the unit ideal.

    Computed as nvars minus a minimum hitting set of the supports of the
    leading monomials, i.e. the size of a maximal strongly independent set.
    """
    B = groebner_basis(G, guard=guard, ring=ring)
    if B.is_unit():
        return -1
    supports = [frozenset(k for k, a in enumerate(lm) if a) for lm in B.leading_monomials()]
    return B.ring.nvars - _min_hitting_set(supports)


def _min_hitting_set(sets: list) -> int:
    sets = [s for s in set(sets) if s]
    # a set that contains another is hit automatically
    sets = [s for s in sets if not any(o < s for o in sets)]
    best = [len({min(s) for s in sets})] if sets else [0]

    def search(chosen: frozenset, remaining: list):
        if len(chosen) >= best[0]:
            return
        if not remaining:
            best[0] = len(chosen)
            return
        pivot = min(remaining, key=len)
        for v in sorted(pivot):
            c = chosen | {v}
            search(c, [s for s in remaining if v not in s])

    search(frozenset(), sets)
    return best[0]
