import pytest

from diffnull import DiffRing, DiffSystem, consistency_profile, lower_bound_formula, verify, x_ring
from diffnull.diffring import DiffPoly, DiffVar
from diffnull.families import FamilySpec, UnsupportedFamily, certificate, generate, intro_system, target


def test_ex41_definition():
    F = generate(FamilySpec("ex41", d=2, n=2, h=1))
    R = F.ring
    y1, y2 = R.y(1), R.y(2)
    assert F.generators == (y1**2, y1 - y2**2, 1 - R.y(2, (1,)))


def test_ex45_definition_and_verbatim_variant():
    R = DiffRing(2, 1)
    y = R.y(1)
    assert generate(FamilySpec("ex45", m=2, h=2)).generators == (R.y(1, (2, 0)), y - R.y(1, (1, 1)))
    assert generate(FamilySpec("ex45", m=2, h=2, verbatim=True))[1] == y - R.y(1, (1, 2))


def test_ex45_chain_for_m3():
    F = generate(FamilySpec("ex45", m=3, h=2))
    R = F.ring
    assert F.generators == (R.y(1, (2, 0, 0)), R.y(1, (1, 0, 0)) - R.y(1, (0, 2, 0)),
                            R.y(1) - R.y(1, (0, 1, 1)))


def test_intro_equations():
    F = intro_system()
    R = F.ring
    assert F[0] == R.y(1, (1, 0)) + R.y(2, (0, 1))
    assert F[1] == R.y(1, (0, 1)) - R.y(2, (1, 0))
    assert generate(FamilySpec("intro")) == F


def test_ex42_smallest_instance():
    F = generate(FamilySpec("ex42", d=2, n=1, h=1, m=2))
    R = F.ring
    d1, d2 = R.y(1, (1, 0)), R.y(1, (0, 1))
    assert F.generators == (d1**2, d1 - d2**2, 1 - R.y(1, (0, 2)))


def _shift_down(f: DiffPoly, ring: DiffRing) -> DiffPoly:
    terms = {}
    for mono, c in f.terms.items():
        terms[tuple((DiffVar(v.index, (v.theta[0] - 1,)), e) for v, e in mono)] = c
    return DiffPoly(ring, terms)


@pytest.mark.parametrize("d, n, h", [(2, 1, 1), (2, 2, 1), (3, 2, 2)])
def test_ex42_with_one_derivation_is_ex41_shifted(d, n, h):
    F42 = generate(FamilySpec("ex42", d=d, n=n, h=h, m=1))
    F41 = generate(FamilySpec("ex41", d=d, n=n, h=h))
    assert tuple(_shift_down(g, F41.ring) for g in F42) == F41.generators


@pytest.mark.parametrize("spec", [
    FamilySpec("ex45", m=2, h=1), FamilySpec("ex45", m=2, h=2), FamilySpec("ex45", m=2, h=3),
    FamilySpec("ex45", m=3, h=2), FamilySpec("ex45", m=3, h=3), FamilySpec("ex45", m=4, h=2),
    FamilySpec("ex46", m=2, n=1, h=3), FamilySpec("ex46", m=2, n=2, h=2), FamilySpec("ex46", m=2, n=2, h=3),
    FamilySpec("ex46", m=2, n=3, h=2), FamilySpec("ex46", m=3, n=2, h=2),
    FamilySpec("brownawell_poly", m=2, h=2), FamilySpec("brownawell_poly", m=3, h=3),
    FamilySpec("brownawell_poly", m=4, h=2),
    FamilySpec("rabinowitsch_wrap", m=2, h=2), FamilySpec("rabinowitsch_wrap", inner="ex46", m=2, n=2, h=2),
], ids=str)
def test_every_certificate_verifies(spec):
    cert = certificate(spec)
    report = verify(cert, generate(spec))
    assert report.ok
    assert cert.target == target(spec)


@pytest.mark.parametrize("m, n, h", [(2, 1, 2), (2, 1, 3), (2, 2, 2)])
def test_certificate_order_equals_formula(m, n, h):
    fam = "ex45" if n == 1 else "ex46"
    spec = FamilySpec(fam, m=m, n=n, h=h)
    assert certificate(spec).max_order() == lower_bound_formula(fam, m=m, n=n, h=h)


@pytest.mark.xfail(strict=True, reason="the exact threshold is n*h*(h-1) = 12, not h^(n(m-1))*(h-1) = 18")
def test_certificate_order_equals_formula_ex46_h3():
    spec = FamilySpec("ex46", m=2, n=2, h=3)
    assert certificate(spec).max_order() == lower_bound_formula("ex46", m=2, n=2, h=3)


def test_ex46_h3_threshold_is_twelve():
    spec = FamilySpec("ex46", m=2, n=2, h=3)
    assert certificate(spec).max_order() == 12


def test_ex45_certificate_rows():
    cert = certificate(FamilySpec("ex45", m=2, h=2))
    rows = {(r.gen, tuple(r.theta)) for r in cert.rows}
    assert rows == {(0, (0, 2)), (1, (0, 0)), (1, (1, 1))}
    assert verify(cert, generate(FamilySpec("ex45", m=2, h=2))).max_order[0] == 2


def test_ex46_n1_delegates_to_ex45():
    assert certificate(FamilySpec("ex46", m=3, n=1, h=2)) == certificate(FamilySpec("ex45", m=3, h=2))
    assert generate(FamilySpec("ex46", m=3, n=1, h=2)) == generate(FamilySpec("ex45", m=3, h=2))


def test_brownawell_cofactors():
    X1, X2 = x_ring(2).gens()
    cert = certificate(FamilySpec("brownawell_poly", m=2, h=2))
    assert cert.cofactors == (X2**2, 1 + X1 * X2)


def test_verbatim_has_no_certificate():
    with pytest.raises(UnsupportedFamily):
        certificate(FamilySpec("ex45", m=2, h=2, verbatim=True))
    with pytest.raises(UnsupportedFamily):
        certificate(FamilySpec("ex41", d=2, n=1, h=1))


def test_rabinowitsch_wrap():
    spec = FamilySpec("rabinowitsch_wrap", m=2, h=2)
    F = generate(spec)
    assert F.ring.n == 2 and len(F) == 3
    assert consistency_profile(F, 3) == 2


@pytest.mark.parametrize("kw", [
    dict(family="nope"), dict(family="ex45", m=1, h=2), dict(family="ex45", m=2),
    dict(family="ex41", d=0, n=1, h=1), dict(family="ex46", m=2, n=0, h=1),
    dict(family="rabinowitsch_wrap", inner="ex41", d=1, n=1, h=1),
])
def test_invalid_specs(kw):
    with pytest.raises(ValueError):
        FamilySpec(**kw)


def test_generation_is_deterministic():
    spec = FamilySpec("ex46", m=2, n=2, h=2)
    F = generate(spec)
    assert F == DiffSystem(F.ring, tuple(generate(spec).generators))
    assert hash(F) == hash(generate(spec))
