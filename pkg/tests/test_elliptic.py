import itertools
import random

import pytest

from splitjac.elliptic import (
    INFINITY,
    EllipticCurve,
    OffCurve,
    add,
    count_points,
    division_polynomial,
    full_two_torsion,
    has_rational_four_torsion,
    neg,
    scalar_mul,
    trace_and_ordinary,
)
from splitjac.finite_field import FieldElement, Polynomial, make_field
from splitjac.finite_field.embed import extension


def curve(p, n, a2, a4, a6):
    F = make_field(p, n)
    return EllipticCurve(F, FieldElement(F, a2), FieldElement(F, a4), FieldElement(F, a6))


def brute_points(E):
    """Every (x, y) in F^2 satisfying the equation, plus infinity (oracle)."""
    F = E.base
    pts = [INFINITY]
    for x in range(F.order):
        for y in range(F.order):
            X, Y = FieldElement(F, x), FieldElement(F, y)
            if Y * Y == X * X * X + E.a2 * X * X + E.a4 * X + E.a6:
                pts.append((X, Y))
    return pts


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        curve(5, 1, 0, 0, 0)


def test_add_example():
    E = curve(5, 1, 0, 1, 0)
    F = E.base
    P, Q = (F(2), F(0)), (F(3), F(0))
    assert add(E, P, Q) == (F(0), F(0))


def test_off_curve_rejected():
    E = curve(5, 1, 0, 1, 0)
    F = E.base
    with pytest.raises(OffCurve):
        add(E, (F(1), F(1)), INFINITY)


@pytest.mark.parametrize(
    "p,coeffs,count,trace",
    [(5, (0, 1, 0), 4, 2), (3, (0, 1, 2), 4, 0), (3, (1, 0, 2), 3, 1)],
)
def test_count_and_trace_examples(p, coeffs, count, trace):
    E = curve(p, 1, *coeffs)
    assert count_points(E) == count
    assert trace_and_ordinary(E) == (trace, trace % p != 0)


def test_j_examples():
    assert curve(5, 1, 0, 1, 0).j_invariant() == 3
    assert curve(7, 1, 0, 0, 1).j_invariant() == 0


def test_two_torsion_examples():
    E = EllipticCurve.from_roots(make_field(5), 0, 1, -1)
    assert [e.value for e in full_two_torsion(E)] == [0, 1, 4]
    assert full_two_torsion(curve(3, 1, 0, 1, 0)) is None
    E = EllipticCurve.from_roots(make_field(5), 3, 0, 2)
    assert [e.value for e in full_two_torsion(E)] == [0, 2, 3]


def test_psi3_formula():
    E = curve(7, 1, 2, 3, 5)
    F = E.base
    a2, a4, a6 = E.a2, E.a4, E.a6
    want = Polynomial(F, [4 * a2 * a6 - a4 * a4, 12 * a6, 6 * a4, 4 * a2, 3])
    assert division_polynomial(E, 3) == want


def test_psi5_degree():
    assert division_polynomial(curve(7, 1, 0, 1, 3), 5).degree == 12


def test_psi_rejects_char_multiple():
    with pytest.raises(ValueError):
        division_polynomial(curve(5, 1, 0, 1, 1), 5)
    with pytest.raises(ValueError):
        division_polynomial(curve(7, 1, 0, 1, 1), 4)


def test_order_four_group():
    E = curve(5, 1, 0, 1, 0)
    for P in E.points():
        assert scalar_mul(E, 4, P) is INFINITY


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2)])
def test_group_axioms_exhaustive(p, n):
    F = make_field(p, n)
    rng = random.Random(p * 10 + n)
    for _ in range(2):
        while True:
            try:
                E = EllipticCurve(F, *(FieldElement(F, rng.randrange(F.order)) for _ in range(3)))
                break
            except ValueError:
                pass
        pts = list(E.points())
        assert sorted(map(repr, pts)) == sorted(map(repr, brute_points(E)))
        for P in pts:
            assert add(E, P, INFINITY) == P
            assert add(E, P, neg(E, P)) is INFINITY
            for Q in pts:
                R = add(E, P, Q)
                assert R == add(E, Q, P) and E.is_on(R)
        sample = pts if len(pts) <= 20 else rng.sample(pts, 20)
        for P, Q, R in itertools.product(sample, repeat=3):
            assert add(E, add(E, P, Q), R) == add(E, P, add(E, Q, R))
        for P in pts:
            assert scalar_mul(E, len(pts), P) is INFINITY


def _list_count(E, m):
    L, emb = extension(E.base, m)
    return sum(1 for _ in E.base_change(emb).points())


@pytest.mark.parametrize("p,n,m", [(3, 1, 2), (3, 1, 4), (5, 1, 3), (3, 2, 2), (7, 1, 2), (5, 2, 2), (3, 4, 1)])
def test_count_matches_listing(p, n, m):
    F = make_field(p, n)
    rng = random.Random(p + n + m)
    for _ in range(4):
        try:
            E = EllipticCurve(F, *(FieldElement(F, rng.randrange(F.order)) for _ in range(3)))
        except ValueError:
            continue
        assert count_points(E, m) == _list_count(E, m)


def test_count_over_extension_from_trace():
    E = curve(5, 1, 0, 1, 0)
    t, _ = trace_and_ordinary(E)
    # a_2 = t^2 - 2q
    assert count_points(E, 2) == 25 + 1 - (t * t - 10)


def test_count_guard():
    with pytest.raises(ValueError):
        count_points(curve(3, 1, 0, 1, 2), 17)


def test_four_torsion_criterion():
    for p, n in [(5, 1), (7, 1), (3, 2), (5, 2)]:
        F = make_field(p, n)
        for e1, e2 in itertools.combinations(range(1, F.order), 2):
            E = EllipticCurve.from_roots(F, FieldElement(F, 0), FieldElement(F, e1), FieldElement(F, e2))
            four = any(
                scalar_mul(E, 2, P) is not INFINITY and scalar_mul(E, 4, P) is INFINITY
                and scalar_mul(E, 2, P) == (FieldElement(F, 0), FieldElement(F, 0))
                for P in E.points()
            ) and all(
                any(P is not INFINITY and add(E, P, P) == (e, FieldElement(F, 0)) for P in E.points())
                for e in full_two_torsion(E)
            )
            assert has_rational_four_torsion(E) == four


def test_division_polynomial_roots_are_torsion():
    E = curve(7, 1, 0, 3, 2)
    psi = division_polynomial(E, 5)
    L, emb = extension(E.base, 4)
    EL = E.base_change(emb)
    for P in EL.points():
        if P is INFINITY:
            continue
        is_5 = scalar_mul(EL, 5, P) is INFINITY
        assert is_5 == (not emb.poly(psi)(P[0]))


def test_json_round_trip():
    E = curve(3, 2, 1, 4, 7)
    assert EllipticCurve.from_json(E.to_json()) == E
