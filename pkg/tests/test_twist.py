import random

import pytest

from splitjac.construct import HyperellipticModel
from splitjac.elliptic import EllipticCurve, count_points
from splitjac.finite_field import (
    FieldElement,
    Polynomial,
    embedding,
    field_from_json,
    make_field,
    quadratic_character,
)
from splitjac.pipeline import verify
from splitjac.twist import (
    FunctionFieldCurve,
    UnverifiedCertificate,
    becomes_isomorphic_over_extension,
    factor_trace,
    find_elliptic_factor,
    make_twist,
    rank_bound,
    twist_field,
)
from splitjac.zeta import LPolynomial, SplitCertificate, base_change, expand_power


def synthetic_split(q, ell, b):
    """Split data for L_k = 1 - b T^g + q^g T^(2g), consistent by construction."""
    g = (ell - 1) // 2
    cs = [0] * (2 * g + 1)
    cs[0], cs[g], cs[2 * g] = 1, -b, q**g
    L_k = LPolynomial(tuple(cs), q, g)
    L_K = base_change(L_k, ell - 1)
    a = -L_K.coeffs[1] // g
    p = min(d for d in range(2, q + 1) if q % d == 0)
    return SplitCertificate(L_k, ell - 1, L_K, a, q ** (ell - 1), a % p != 0, True, g, g, ell)


def test_make_twist_rejects_constant_h():
    E = EllipticCurve.from_coeffs(make_field(7), 0, 1, 3)
    with pytest.raises(ValueError):
        make_twist(E, Polynomial(E.base, [1]))


def test_make_twist_rejects_square_factor():
    E = EllipticCurve.from_coeffs(make_field(7), 0, 1, 3)
    x = Polynomial.x(E.base)
    with pytest.raises(ValueError):
        make_twist(E, (x - 1) * (x - 1) * (x + 2))


def test_twist_of_small_curve():
    F = make_field(7)
    E = EllipticCurve.from_coeffs(F, 2, 1, 5)
    x = Polynomial.x(F)
    h = x * x * x + x + 1
    T = make_twist(E, h)
    assert T.constant_j() == E.j_invariant()
    assert T.discriminant().degree >= 1
    assert becomes_isomorphic_over_extension(T, E, h)
    bad = FunctionFieldCurve(F, T.A2, T.A4 + Polynomial(F, [1]), T.A6)
    assert not becomes_isomorphic_over_extension(bad, E, h)


def test_fibres_are_twists():
    """At x0, the fibre is E twisted by h(x0); its trace is chi(h(x0)) * trace(E)."""
    F = make_field(5, 2)
    E = EllipticCurve.from_coeffs(F, 3, 7, 11)
    x = Polynomial.x(F)
    h = x**3 + x.scale(FieldElement(F, 2)) + 1
    T = make_twist(E, h)
    tE = F.order + 1 - count_points(E)
    for v in range(F.order):
        x0 = FieldElement(F, v)
        hv = h(x0)
        if not hv:
            continue
        Ex = EllipticCurve(F, T.A2(x0), T.A4(x0), T.A6(x0))
        assert F.order + 1 - count_points(Ex) == quadratic_character(hv) * tE


@pytest.mark.parametrize("ell,g", [(3, 1), (5, 2), (7, 3)])
def test_rank_bound_values(ell, g):
    rb = rank_bound(synthetic_split(3, ell, 1))
    assert rb.bound == g and len(rb.provenance) == 64


def test_rank_bound_monotone_in_ell():
    bounds = [rank_bound(synthetic_split(5, ell, 2)).bound for ell in (3, 5, 7, 11)]
    assert bounds == sorted(bounds) and len(set(bounds)) == 4


def test_rank_bound_refuses_supersingular():
    with pytest.raises(UnverifiedCertificate):
        rank_bound(synthetic_split(3, 5, 0))


def test_rank_bound_refuses_inconsistent_power():
    s = synthetic_split(3, 5, 1)
    wrong = SplitCertificate(s.L_over_k, s.K_degree, s.L_over_K, s.a + 1, s.q_K, True, True, 2, 2, 5)
    with pytest.raises(UnverifiedCertificate):
        rank_bound(wrong)


def test_factor_trace_requires_inert_shape():
    with pytest.raises(ValueError):
        factor_trace(LPolynomial((1, 1, 4, 3, 9), 3, 2))
    assert factor_trace(LPolynomial((1, 0, -4, 0, 9), 3, 2)) == 4


def test_find_elliptic_factor_synthetic():
    s = synthetic_split(7, 5, 10)
    B = find_elliptic_factor(s.L_over_k, make_field(7), seed=3)
    assert B.base.order == 49 and count_points(B) == 49 + 1 - 10
    assert expand_power(10, 49, 2) == list(base_change(s.L_over_k, 2).coeffs)


def test_twist_field_choice():
    assert twist_field(make_field(7), 3).order == 49
    assert twist_field(make_field(7, 2), 5).order == 7**8
    # K = F_{3^24} exceeds the field guard; the splitting field F_{3^12} is used
    assert twist_field(make_field(3, 4), 7).order == 3**12


def test_certificate_twist(cert_7_5):
    t = cert_7_5["twist"]
    K = field_from_json(t["field"])
    Fg = field_from_json(t["factor_field"])
    assert K.order == 49**4 and Fg.order == 49**2
    B = EllipticCurve.from_json({"field": t["factor_field"], **t["factor"]})
    b = -cert_7_5["split"]["L_k"][2]
    assert count_points(B) == Fg.order + 1 - b
    assert b % 7 != 0
    assert t["rank_bound"] == 2
    assert verify(cert_7_5).passed


def test_certificate_twist_fibres(cert_7_3):
    """On the smallest certificate, re-derive fibres of the twist over K by counting."""
    t = cert_7_3["twist"]
    K = field_from_json(t["field"])
    A = [Polynomial.from_json(K, t[k]) for k in ("A2", "A4", "A6")]
    F = field_from_json(cert_7_3["field"])
    D = HyperellipticModel(F, Polynomial.from_json(F, cert_7_3["D"]["h"]))
    h = embedding(F, K).poly(D.h)
    a = cert_7_3["split"]["a"]
    rng = random.Random(0)
    for _ in range(10):
        x0 = FieldElement(K, rng.randrange(K.order))
        if not h(x0):
            continue
        Ex = EllipticCurve(K, *(c(x0) for c in A))
        assert K.order + 1 - count_points(Ex) == quadratic_character(h(x0)) * a
