import random

import pytest

from splitjac.construct import HyperellipticModel
from splitjac.elliptic import EllipticCurve, count_points
from splitjac.finite_field import FieldElement, Polynomial, make_field
from splitjac.finite_field.embed import extension
from splitjac.zeta import (
    CountInconsistency,
    LPolynomial,
    base_change,
    cartier_manin,
    count_points_hyperelliptic,
    expand_power,
    inert_shape_check,
    lpoly_from_counts,
    lpolynomial,
    p_rank,
    power_of_elliptic,
    split_certificate,
)

from helpers import frames


def model(p, n, cs):
    F = make_field(p, n)
    return HyperellipticModel(F, Polynomial._raw(F, cs))


def brute_count(H, m=1):
    """Enumerate (x, y) pairs over F_{q^m} and add the points at infinity (oracle)."""
    L, emb = extension(H.base, m)
    h = emb.poly(H.h)
    affine = 0
    for x in range(L.order):
        hx = h(FieldElement(L, x))
        affine += sum(1 for y in range(L.order) if L.mul(y, y) == hx.value)
    if H.h.degree % 2:
        return affine + 1
    return affine + (2 if FieldElement(L, emb.raw(H.h.coeffs[-1])).is_square() else 0)


def random_model(F, deg, rng):
    while True:
        cs = [rng.randrange(F.order) for _ in range(deg)] + [rng.randrange(1, F.order)]
        try:
            return HyperellipticModel(F, Polynomial._raw(F, cs))
        except ValueError:
            pass


def test_elliptic_count_example():
    assert count_points_hyperelliptic(model(5, 1, [0, 1, 0, 1])) == 4


@pytest.mark.parametrize("p,n,deg,m", [(3, 1, 5, 1), (3, 1, 5, 2), (5, 1, 6, 1), (7, 1, 5, 2), (3, 2, 6, 1), (3, 2, 5, 2)])
def test_counts_match_enumeration(p, n, deg, m):
    F = make_field(p, n)
    rng = random.Random(p * n * deg * m)
    for _ in range(3):
        H = random_model(F, deg, rng)
        assert count_points_hyperelliptic(H, m) == brute_count(H, m)


def test_elliptic_lpolynomial():
    L, counts = lpolynomial(model(5, 1, [0, 1, 0, 1]))
    assert L.coeffs == (1, -2, 5) and counts == [4]


def test_elliptic_base_change():
    E = EllipticCurve.from_coeffs(make_field(5), 0, 1, 0)
    L, _ = lpolynomial(model(5, 1, [0, 1, 0, 1]))
    L2 = base_change(L, 2)
    t = 2
    assert L2.coeffs == (1, -(t * t - 10), 25)
    assert L2.counts(1) == [count_points(E, 2)]


def test_zeta_cli_example_values():
    L, counts = lpolynomial(model(3, 2, [2, 1, 0, 1]))
    assert counts == [16] and L.coeffs == (1, 6, 9)
    assert p_rank(L, 3) == 0


@pytest.mark.parametrize("cs,rank", [([2, 1, 0, 1], 0), ([2, 0, 1, 1], 1)])
def test_cartier_manin_elliptic(cs, rank):
    H = model(3, 1, cs)
    assert cartier_manin(H)[1] == rank
    L, _ = lpolynomial(H)
    assert p_rank(L, 3) == rank


def test_power_of_elliptic_examples():
    L = LPolynomial((1, -4, 22, -36, 81), 9, 2)
    assert power_of_elliptic(L) == {"a": 2, "q_K": 9, "ordinary": None}
    assert power_of_elliptic(L, p=3)["ordinary"] is True
    # (1 - 2T + 9T^2)(1 - T + 9T^2)
    L2 = LPolynomial((1, -3, 20, -27, 81), 9, 2)
    assert power_of_elliptic(L2) is None


def test_expand_power():
    assert expand_power(2, 9, 2) == [1, -4, 22, -36, 81]
    assert expand_power(0, 7, 1) == [1, 0, 7]


def test_counts_round_trip():
    rng = random.Random(1)
    for _ in range(50):
        F = make_field(*rng.choice([(3, 1), (5, 1), (7, 1), (3, 2)]))
        H = random_model(F, rng.choice([5, 6]), rng)
        L, counts = lpolynomial(H)
        assert L.counts() == counts
        assert lpoly_from_counts(counts, F.order, 2) == L
        assert L.functional_equation_ok() and L.weil_ok()


def test_inconsistent_counts_rejected():
    with pytest.raises(CountInconsistency):
        lpoly_from_counts([100, 0], 3, 2)
    with pytest.raises(CountInconsistency):
        lpoly_from_counts([4, 11], 3, 2)  # a2 = ((S1^2 - S2)/2) not integral
    with pytest.raises(ValueError):
        lpoly_from_counts([4], 3, 2)


def test_base_change_matches_power_sums():
    """S_m over F_{q^n} equals S_{mn} over F_q."""
    rng = random.Random(2)
    for _ in range(60):
        q = rng.choice([3, 5, 7, 9, 25])
        g = rng.choice([1, 2, 3])
        L = random_weil_product(q, g, rng)
        for n in (2, 3, 4):
            Ln = base_change(L, n)
            assert Ln.power_sums(2 * g) == [s for i, s in enumerate(L.power_sums(2 * g * n), 1) if i % n == 0]
            assert Ln.functional_equation_ok()


def random_weil_product(q, g, rng):
    out = [1]
    for _ in range(g):
        a = rng.randrange(-int((4 * q) ** 0.5), int((4 * q) ** 0.5) + 1)
        nxt = [0] * (len(out) + 2)
        for i, c in enumerate(out):
            nxt[i] += c
            nxt[i + 1] -= a * c
            nxt[i + 2] += q * c
        out = nxt
    return LPolynomial(tuple(out), q, g)


def test_base_change_composition():
    rng = random.Random(3)
    for _ in range(30):
        L = random_weil_product(rng.choice([3, 5, 9]), 2, rng)
        assert base_change(base_change(L, 2), 3) == base_change(L, 6)


def test_base_change_against_direct_count_on_extension():
    H = model(3, 1, [1, 2, 0, 1, 1])
    L, _ = lpolynomial(H)
    L2 = base_change(L, 2)
    assert L2.counts(2) == [count_points_hyperelliptic(H, 2), count_points_hyperelliptic(H, 4)]


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_cartier_manin_rank_equals_p_rank(p, n):
    F = make_field(p, n)
    rng = random.Random(p + 17 * n)
    for _ in range(15):
        H = random_model(F, rng.choice([5, 6]), rng)
        L, _ = lpolynomial(H)
        assert cartier_manin(H)[1] == p_rank(L, p)


def test_inert_shape():
    assert inert_shape_check(LPolynomial((1, 0, 4, 0, 9), 3, 2))
    assert not inert_shape_check(LPolynomial((1, 1, 4, 3, 9), 3, 2))


def test_inert_construction_splits_over_K():
    for p, n, ell in [(7, 1, 3), (3, 3, 5)]:
        certs = []
        for *_, D in frames(p, n, ell, 8, inert=True, ordinary=True):
            cert, reason = split_certificate(D, ell)
            assert reason is None and cert.inert_shape_ok
            assert cert.p_rank == cert.cartier_manin_rank
            assert cert.ordinary == (cert.p_rank == D.genus)
            if cert.ordinary:
                certs.append((D, cert))
        assert certs
        if ell == 3:
            D, cert = certs[0]
            # N_1 and N_2 over K counted directly
            assert cert.L_over_K.counts(2) == [count_points_hyperelliptic(D, 2), count_points_hyperelliptic(D, 4)]


def test_non_inert_construction_fails_shape():
    found = frames(3, 3, 5, 4, inert=False) + frames(7, 2, 5, 4, inert=False)
    assert found
    shapes = [inert_shape_check(lpolynomial(D)[0]) for *_, D in found]
    assert not all(shapes)
