import itertools

import pytest

from splitjac.construct import (
    PAIRINGS,
    HyperellipticModel,
    MobiusMap,
    branch_points_map_to,
    build_D,
    build_D_prime,
    compute_frame,
    degenerate_report,
    isomorphic_respecting_pairing,
    mobius_matching,
    mobius_through,
    ramification_profile,
)
from splitjac.elliptic import EllipticCurve, full_two_torsion
from splitjac.finite_field import FieldElement, Polynomial, make_field
from splitjac.isogeny import enumerate_rational_kernels, velu

from helpers import frames, legendre_curves


def affine_degenerate_oracle(E, Ep, pairing):
    """Search all q^2 - q affine maps of the x-line for one sending e'_i to e_{pairing[i]}."""
    F = E.base
    e, ep = full_two_torsion(E), full_two_torsion(Ep)
    for a in range(1, F.order):
        for b in range(F.order):
            A, B = FieldElement(F, a), FieldElement(F, b)
            if all(A * ep[i] + B == e[pairing[i]] for i in range(3)):
                return True
    return False


# -- Mobius maps -----------------------------------------------------------------

def test_identity_map():
    F = make_field(7)
    pts = [F(1), F(3), F(5)]
    mu = mobius_through(pts, pts)
    assert mu == MobiusMap.identity(F)
    assert mu(None) is None


def test_swap_example():
    F = make_field(5)
    mu = mobius_through([F(0), F(1), F(2)], [F(0), F(2), F(1)])
    assert [mu(F(z)) for z in (0, 1, 2)] == [F(0), F(2), F(1)]
    assert mu.compose(mu.inverse()) == MobiusMap.identity(F)


def test_mobius_rejects_repeated_points():
    F = make_field(5)
    with pytest.raises(ValueError):
        mobius_through([F(0), F(0), F(2)], [F(0), F(1), F(2)])


def test_mobius_on_all_triples_f7():
    F = make_field(7)
    elems = [F(v) for v in range(7)]
    for src in itertools.permutations(elems, 3):
        mu = mobius_through(list(src), [F(0), F(1), F(3)])
        assert [mu(z) for z in src] == [F(0), F(1), F(3)]


# -- degenerate detection ------------------------------------------------------

def test_same_curve_is_degenerate():
    E = EllipticCurve.from_roots(make_field(7), 0, 1, 3)
    _, c, rep = degenerate_report(E, E, (0, 1, 2))
    assert rep.flag and c is None and rep.description


def test_quadratic_twist_is_degenerate():
    F = make_field(7)
    E = EllipticCurve.from_roots(F, 0, 1, 3)
    d = FieldElement(F, 3)
    Et = EllipticCurve.from_roots(F, 0, d, 3 * d)
    pairing = next(pg for pg in PAIRINGS if affine_degenerate_oracle(Et, E, pg))
    assert degenerate_report(Et, E, pairing)[2].flag


def test_generic_pair_not_degenerate():
    F = make_field(7)
    E = EllipticCurve.from_roots(F, 0, 1, 3)
    E2 = EllipticCurve.from_roots(F, 0, 1, 2)
    for pg in PAIRINGS:
        assert not degenerate_report(E, E2, pg)[2].flag


@pytest.mark.parametrize("p,n", [(5, 1), (7, 1), (3, 2)])
def test_degenerate_matches_affine_search(p, n):
    F = make_field(p, n)
    curves = list(legendre_curves(F))
    for E, Ep in itertools.product(curves, repeat=2):
        for pg in PAIRINGS:
            flag = degenerate_report(E, Ep, pg)[2].flag
            assert flag == affine_degenerate_oracle(E, Ep, pg)
            assert flag == isomorphic_respecting_pairing(E, Ep, pg)


def test_mobius_matching_sends_two_torsion():
    F = make_field(7)
    E = EllipticCurve.from_roots(F, 0, 1, 3)
    Ep = EllipticCurve.from_roots(F, 0, 1, 5)
    for pg in PAIRINGS:
        mu = mobius_matching(E, Ep, pg)
        e, ep = full_two_torsion(E), full_two_torsion(Ep)
        assert [mu(ep[i]) for i in range(3)] == [e[pg[i]] for i in range(3)]


# -- D and D' ------------------------------------------------------------------

@pytest.mark.parametrize("p,n,ell", [(7, 1, 3), (5, 2, 3), (3, 3, 5), (7, 2, 5)])
def test_genus_and_degrees(p, n, ell):
    fs = frames(p, n, ell, 3)
    assert fs
    g = (ell - 1) // 2
    for _, I, frame, _ in fs:
        D = build_D(I, frame)
        Dp = build_D_prime(I, frame)
        assert D.h.degree == ell and D.genus == g
        assert Dp.genus == g + 1
        assert branch_points_map_to(I, D, frame.P_prime)


def test_ramification_of_u():
    for _, I, frame, _ in frames(7, 1, 3, 2) + frames(3, 3, 5, 2):
        n = (I.ell - 1) // 2
        assert ramification_profile(I.u, None) == [1] + [2] * n
        for e in full_two_torsion(I.codomain):
            assert ramification_profile(I.u, e) == [1] + [2] * n
        assert ramification_profile(I.u, frame.P_prime) == [1] * I.ell


def test_degenerate_frame_refuses_model():
    F = make_field(7)
    Et = next(E for E in legendre_curves(F) if enumerate_rational_kernels(E, 3))
    I = velu(enumerate_rational_kernels(Et, 3)[0])
    frame, rep = compute_frame(I, I.codomain, (0, 1, 2))
    assert rep.flag
    with pytest.raises(ValueError):
        build_D(I, frame)
    with pytest.raises(ValueError):
        build_D_prime(I, frame)


def test_hyperelliptic_model_validation():
    F = make_field(5)
    x = Polynomial.x(F)
    with pytest.raises(ValueError):
        HyperellipticModel(F, x * x)
    with pytest.raises(ValueError):
        HyperellipticModel(F, (x - 1) * (x - 1) * (x + 1))
    H = HyperellipticModel(F, x * (x - 1) * (x - 2) * (x - 3) * (x - 4))
    assert H.genus == 2
    assert HyperellipticModel.from_json(H.to_json()) == H
