"""Generators for the example systems and their explicit certificates.

Families
--------
intro            u_x + v_y, u_y - v_x, (u_xx + u_yy)^2 + (v_xx + v_yy)^2 - 1   (m = n = 2)
ex41             y1^d, y1 - y2^d, ..., y_(n-1) - y_n^d, 1 - y_n^(h)             (m = 1)
ex42             chains (d_(j-1) y_i - (d_j y_i)^d) closed by 1 - d_m^(h+1) y_n
ex45             d1^h y, d_(i-1) y - d_i^h y, y - d_(m-1) d_m^(h-1) y           (n = 1)
ex46             ex45 chained over y1..yn
brownawell_poly  X1^h, X_(i-1) - X_i^h, 1 - X_(m-1) X_m^(h-1)                   (polynomials)
rabinowitsch_wrap  an ex45/ex46 system plus 1 - t*target, t a fresh indeterminate

The last generator of ex45/ex46 uses d_m^(h-1) so that it is the image of
1 - X_(m-1) X_m^(h-1); ``verbatim=True`` emits d_m^h instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import lower_bound_formula
from .certify import Certificate, CertRow, PolyCertificate
from .commpoly import x_ring
from .diffring import DerivOp, DiffPoly, DiffRing
from .linear import linear_threshold
from .prolong import DiffSystem

FAMILIES = ("intro", "ex41", "ex42", "ex45", "ex46", "brownawell_poly", "rabinowitsch_wrap")


class UnsupportedFamily(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    d: int | None = None
    h: int | None = None
    n: int | None = None
    m: int | None = None
    verbatim: bool = False
    inner: str = "ex45"

    def __post_init__(self):
        fam = self.family
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
        if fam == "intro":
            return
        if fam == "rabinowitsch_wrap":
            if self.inner not in ("ex45", "ex46"):
                raise ValueError("rabinowitsch_wrap wraps ex45 or ex46")
            FamilySpec(self.inner, self.d, self.h, self.n, self.m, self.verbatim)
            return
        required = {
            "ex41": ("d", "n", "h"),
            "ex42": ("d", "n", "h", "m"),
            "ex45": ("m", "h"),
            "ex46": ("m", "n", "h"),
            "brownawell_poly": ("m", "h"),
        }[fam]
        for name in required:
            v = getattr(self, name)
            if v is None:
                raise ValueError(f"{fam} needs parameter {name}")
            lo = 2 if (name == "m" and fam != "ex42") else 1
            if v < lo:
                raise ValueError(f"{fam}: {name}={v} must be >= {lo}")

    @property
    def n_effective(self) -> int:
        return self.n if self.family in ("ex41", "ex42", "ex46") else 1


def _d(ring: DiffRing, i: int, pairs) -> DiffPoly:
    e = [0] * ring.m
    for j, k in pairs:
        e[j - 1] += k
    return ring.y(i, e)


def intro_system() -> DiffSystem:
    R = DiffRing(2, 2)
    u_x, u_y = _d(R, 1, [(1, 1)]), _d(R, 1, [(2, 1)])
    v_x, v_y = _d(R, 2, [(1, 1)]), _d(R, 2, [(2, 1)])
    lap_u = _d(R, 1, [(1, 2)]) + _d(R, 1, [(2, 2)])
    lap_v = _d(R, 2, [(1, 2)]) + _d(R, 2, [(2, 2)])
    return DiffSystem(R, (u_x + v_y, u_y - v_x, lap_u**2 + lap_v**2 - 1))


def _ex41(d: int, n: int, h: int) -> DiffSystem:
    R = DiffRing(1, n)
    gens = [R.y(1) ** d]
    gens += [R.y(i) - R.y(i + 1) ** d for i in range(1, n)]
    gens.append(1 - R.y(n, (h,)))
    return DiffSystem(R, tuple(gens))


def _ex42(d: int, n: int, h: int, m: int) -> DiffSystem:
    R = DiffRing(m, n)
    gens = []
    for i in range(1, n + 1):
        if i == 1:
            gens.append(_d(R, 1, [(1, 1)]) ** d)
        else:
            gens.append(_d(R, i - 1, [(m, 1)]) - _d(R, i, [(1, 1)]) ** d)
        for j in range(2, m + 1):
            gens.append(_d(R, i, [(j - 1, 1)]) - _d(R, i, [(j, 1)]) ** d)
    gens.append(1 - _d(R, n, [(m, h + 1)]))
    return DiffSystem(R, tuple(gens))


def _ex46(m: int, n: int, h: int, verbatim: bool) -> DiffSystem:
    R = DiffRing(m, n)
    gens = []
    for i in range(1, n + 1):
        if i == 1:
            gens.append(_d(R, 1, [(1, h)]))
        else:
            gens.append(_d(R, i - 1, [(m - 1, 1)]) - _d(R, i, [(1, h)]))
        for j in range(2, m):
            gens.append(_d(R, i, [(j - 1, 1)]) - _d(R, i, [(j, h)]))
    last = h if verbatim else h - 1
    gens.append(R.y(n) - _d(R, n, [(m - 1, 1), (m, last)]))
    return DiffSystem(R, tuple(gens))


def _brownawell(m: int, h: int) -> list:
    X = x_ring(m)
    Xs = X.gens()
    fs = [Xs[0] ** h]
    fs += [Xs[i - 2] - Xs[i - 1] ** h for i in range(2, m)]
    fs.append(1 - Xs[m - 2] * Xs[m - 1] ** (h - 1))
    return fs


def generate(spec: FamilySpec):
    """The family's system: a DiffSystem, or a list of Polys for brownawell_poly."""
    fam = spec.family
    if fam == "intro":
        return intro_system()
    if fam == "ex41":
        return _ex41(spec.d, spec.n, spec.h)
    if fam == "ex42":
        return _ex42(spec.d, spec.n, spec.h, spec.m)
    if fam == "ex45":
        return _ex46(spec.m, 1, spec.h, spec.verbatim)
    if fam == "ex46":
        return _ex46(spec.m, spec.n, spec.h, spec.verbatim)
    if fam == "brownawell_poly":
        return _brownawell(spec.m, spec.h)
    inner = _inner(spec)
    base = generate(inner)
    R = base.ring.with_indeterminates(base.ring.n + 1)
    t = R.y(R.n)
    lifted = tuple(_lift(g, R) for g in base.generators)
    return DiffSystem(R, lifted + (1 - t * _lift(target(inner), R),))


def _inner(spec: FamilySpec) -> FamilySpec:
    return FamilySpec(spec.inner, spec.d, spec.h, spec.n, spec.m, spec.verbatim)


def _lift(f: DiffPoly, ring: DiffRing) -> DiffPoly:
    return DiffPoly(ring, dict(f.terms))


def target(spec: FamilySpec):
    """What the family's certificate produces: y (ex45), y_n (ex46), 1 otherwise."""
    fam = spec.family
    if fam in ("ex45", "ex46"):
        sys_ = generate(spec)
        return sys_.ring.y(sys_.ring.n)
    if fam == "brownawell_poly":
        return x_ring(spec.m).one()
    return generate(spec).ring.one()


def certificate(spec: FamilySpec):
    """Explicit certificate for ex45, ex46, brownawell_poly (and rabinowitsch_wrap)."""
    fam = spec.family
    if fam == "ex45":
        return _ex45_certificate(spec.m, spec.h, spec.verbatim)
    if fam == "ex46":
        if spec.n == 1:
            return _ex45_certificate(spec.m, spec.h, spec.verbatim)
        return _ex46_certificate(spec)
    if fam == "brownawell_poly":
        return _brownawell_certificate(spec.m, spec.h)
    if fam == "rabinowitsch_wrap":
        inner = certificate(_inner(spec))
        wrapped = generate(spec)
        R = wrapped.ring
        t = R.y(R.n)
        rows = [CertRow(r.gen, r.theta, t * _lift(r.coeff, R)) for r in inner.rows]
        rows.append(CertRow(len(wrapped) - 1, DerivOp.identity(R.m), R.one()))
        return Certificate(R.one(), tuple(rows))
    raise UnsupportedFamily(f"no certificate construction for family {fam!r}")


def _ex45_certificate(m: int, h: int, verbatim: bool) -> Certificate:
    """d_m^D(f1) - sum_i d_m^D(telescoped f_i) + sum_j d_(m-1)^j d_m^(j(h-1)) f_m = y."""
    if verbatim:
        raise UnsupportedFamily("the certificate identity needs the d_m^(h-1) form of the last generator")
    R = DiffRing(m, 1)
    D = h ** (m - 1) * (h - 1)
    rows = [CertRow(0, DerivOp.unit(m, m, D), R.one())]
    for i in range(2, m):
        a = h ** (i - 1)
        for j in range(a):
            e = [0] * m
            e[i - 2] += a - j - 1
            e[i - 1] += h * j
            e[m - 1] += D
            rows.append(CertRow(i - 1, DerivOp(e), -R.one()))
    for j in range(h ** (m - 1)):
        e = [0] * m
        e[m - 2] += j
        e[m - 1] += j * (h - 1)
        rows.append(CertRow(m - 1, DerivOp(e), R.one()))
    return Certificate(R.y(1), tuple(rows))


def _ex46_certificate(spec: FamilySpec) -> Certificate:
    # The printed multi-indeterminate identity does not expand to y_n; the
    # combination is recovered by exact row reduction at the smallest order.
    system = generate(spec)
    bound = lower_bound_formula("ex46", h=spec.h, n=spec.n, m=spec.m)
    found = linear_threshold(system.ring.y(system.ring.n), system, bound)
    if found.order is None:
        raise UnsupportedFamily(f"no certificate up to order {bound} for {spec}")
    return found.certificate


def _brownawell_certificate(m: int, h: int) -> PolyCertificate:
    X = x_ring(m)
    Xs = X.gens()
    D = h ** (m - 1) * (h - 1)
    cof = [Xs[m - 1] ** D]
    for i in range(2, m):
        a = h ** (i - 1)
        s = X.zero()
        for j in range(a):
            s = s + Xs[i - 2] ** (a - 1 - j) * (Xs[i - 1] ** h) ** j
        # the telescoping terms enter with a minus sign
        cof.append(-(Xs[m - 1] ** D) * s)
    u = Xs[m - 2] * Xs[m - 1] ** (h - 1)
    s = X.zero()
    for j in range(h ** (m - 1)):
        s = s + u**j
    cof.append(s)
    return PolyCertificate(X.one(), tuple(cof))
