"""The quadratic twist of an elliptic curve over K(x) by a hyperelliptic h.

Given a split certificate for D: y^2 = h(x), the Jacobian of D is isogenous
to B^g for an ordinary elliptic curve B.  The twist of B by h over K(x) then
has rank at least g; this module builds that curve, locates B, and checks
the constant-j and isomorphism-over-K(D) claims symbolically.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass

from .construct import HyperellipticModel
from .elliptic import INFINITY, EllipticCurve, count_points, scalar_mul
from .finite_field import (
    FieldElement,
    FiniteField,
    Polynomial,
    RationalFunction,
    embedding,
    make_field,
    poly_gcd,
)
from .finite_field.field import MAX_ORDER
from .zeta import LPolynomial, SplitCertificate, base_change, expand_power

SEARCH_LIMIT = 200_000


class UnverifiedCertificate(ValueError):
    pass


class FactorNotFound(RuntimeError):
    pass


@dataclass(frozen=True)
class FunctionFieldCurve:
    """Y^2 = X^3 + A2(x) X^2 + A4(x) X + A6(x) over K[x]."""

    base: FiniteField
    A2: Polynomial
    A4: Polynomial
    A6: Polynomial

    def b_invariants(self):
        A2, A4, A6 = self.A2, self.A4, self.A6
        return 4 * A2, 2 * A4, 4 * A6, 4 * A2 * A6 - A4 * A4

    def discriminant(self) -> Polynomial:
        b2, b4, b6, b8 = self.b_invariants()
        return -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def c4(self) -> Polynomial:
        b2, b4, _, _ = self.b_invariants()
        return b2 * b2 - 24 * b4

    def j_invariant(self) -> RationalFunction:
        c4 = self.c4()
        return RationalFunction(c4 * c4 * c4, self.discriminant())

    def constant_j(self):
        """j as an element of K, or None if j depends on x."""
        j = self.j_invariant()
        if j.num.degree > 0 or j.den.degree > 0:
            return None
        if not j.num:
            return self.base.zero()
        return FieldElement(self.base, self.base.div(j.num.coeffs[0], j.den.coeffs[0]))

    def to_json(self):
        return {
            "field": self.base.to_json(),
            "A2": self.A2.to_json(),
            "A4": self.A4.to_json(),
            "A6": self.A6.to_json(),
        }


def make_twist(E: EllipticCurve, h: Polynomial) -> FunctionFieldCurve:
    """Twist of E by h: Y^2 = X^3 + a2*h*X^2 + a4*h^2*X + a6*h^3."""
    if h.field != E.base:
        raise ValueError("h and E must live over the same field")
    if h.degree < 1:
        raise ValueError("h must be nonconstant")
    if poly_gcd(h, h.derivative()).degree != 0:
        raise ValueError("h must be squarefree")
    h2 = h * h
    return FunctionFieldCurve(E.base, h.scale(E.a2), h2.scale(E.a4), (h2 * h).scale(E.a6))


def _substituted(T: FunctionFieldCurve, h: Polynomial):
    """Twist equation Y^2 - (X^3 + ...) after X -> h*x, Y -> h^2*y.

    Returned as {(i, j): coefficient} for the monomial x^i y^j.
    """
    h2 = h * h
    h3 = h2 * h
    return {
        (0, 2): h2 * h2,
        (3, 0): -h3,
        (2, 0): -(T.A2 * h2),
        (1, 0): -(T.A4 * h),
        (0, 0): -T.A6,
    }


def becomes_isomorphic_over_extension(T: FunctionFieldCurve, E: EllipticCurve, h: Polynomial) -> bool:
    """Check the polynomial identity behind T ~ E over K(x)(w), w^2 = h.

    After X -> h*x, Y -> h^2*y the twist equation must equal h^3 times
    h*y^2 - f(x); with y' = w*y that is h^3 (y'^2 - f(x)), i.e. E.
    """
    sub = _substituted(T, h)
    h3 = h * h * h
    want = {
        (0, 2): h3 * h,
        (3, 0): -h3,
        (2, 0): -h3.scale(E.a2),
        (1, 0): -h3.scale(E.a4),
        (0, 0): -h3.scale(E.a6),
    }
    keys = set(sub) | set(want)
    zero = Polynomial(T.base, [])
    return all(sub.get(k, zero) == want.get(k, zero) for k in keys)


@dataclass(frozen=True)
class RankBound:
    bound: int
    provenance: str  # sha256 of the canonical split-certificate JSON

    def to_json(self):
        return {"bound": self.bound, "provenance": self.provenance}


def _split_hash(cert: SplitCertificate) -> str:
    blob = json.dumps(cert.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def rank_bound(cert: SplitCertificate) -> RankBound:
    g = cert.L_over_k.g
    if not cert.ordinary:
        raise UnverifiedCertificate("elliptic factor is not ordinary")
    if expand_power(cert.a, cert.q_K, g) != list(cert.L_over_K.coeffs):
        raise UnverifiedCertificate("L over K is not the claimed power")
    if base_change(cert.L_over_k, cert.K_degree) != cert.L_over_K:
        raise UnverifiedCertificate("L over K does not come from L over k")
    return RankBound(g, _split_hash(cert))


# -- the elliptic factor --------------------------------------------------------

def factor_trace(L_k: LPolynomial) -> int:
    """Trace b of B over F_{q^g} when L_k(T) = 1 - b T^g + q^g T^(2g)."""
    g = L_k.g
    if any(c for i, c in enumerate(L_k.coeffs) if i % g):
        raise ValueError("L-polynomial is not of inert shape")
    return -L_k.coeffs[g]


def _seed_rng(*parts) -> random.Random:
    digest = hashlib.sha256(repr(parts).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _kills(E: EllipticCurve, n: int, rng, tries: int = 4) -> bool:
    return all(scalar_mul(E, n, E.random_point(rng)) is INFINITY for _ in range(tries))


def find_elliptic_factor(L_k: LPolynomial, base: FiniteField, seed: int = 0) -> EllipticCurve:
    """An ordinary curve B over F_{q^g} with #B = q^g + 1 - b.

    Then L_k evaluated over F_{q^g} equals (1 - bT + q^g T^2)^g, so the
    Jacobian is isogenous to B^g there, by Tate's theorem.  Random curves
    are screened by checking that q^g + 1 -+ b kills random points, and the
    survivor (or its quadratic twist) is confirmed by an exact count.
    """
    g = L_k.g
    b = factor_trace(L_k)
    F = make_field(base.p, base.degree * g)
    Q = F.order
    if b % F.p == 0:
        raise FactorNotFound("target trace is divisible by p")
    if expand_power(b, Q, g) != list(base_change(L_k, g).coeffs):
        raise AssertionError("inert-shape L does not split over F_{q^g}")
    nonsq = next(v for v in range(1, Q) if F.chi(v) == -1)
    rng = _seed_rng("factor", F.p, F.degree, b, seed)
    for _ in range(SEARCH_LIMIT):
        try:
            E = EllipticCurve(F, *(FieldElement(F, rng.randrange(Q)) for _ in range(3)))
        except ValueError:
            continue
        for cand, n in ((E, Q + 1 - b), (None, Q + 1 + b)):
            if not _kills(E, n, rng):
                continue
            B = cand if cand is not None else E.quadratic_twist(FieldElement(F, nonsq))
            if count_points(B) == Q + 1 - b:
                return B
    raise FactorNotFound(f"no curve with trace {b} over F_{Q} in {SEARCH_LIMIT} samples")


def twist_field(base: FiniteField, ell: int) -> FiniteField:
    """K = the degree-(ell-1) extension, or F_{q^g} when K exceeds the field guard.

    The splitting already holds over F_{q^g}, so the smaller field loses nothing.
    """
    deg = base.degree * (ell - 1)
    if base.p**deg <= MAX_ORDER:
        return make_field(base.p, deg)
    return make_field(base.p, base.degree * (ell - 1) // 2)


@dataclass(frozen=True)
class TwistRecord:
    curve: FunctionFieldCurve
    factor: EllipticCurve  # B over F_{q^g}
    factor_over_base: EllipticCurve  # B over the twist field
    h: Polynomial
    j: FieldElement
    rank: RankBound

    def to_json(self):
        doc = self.curve.to_json()
        doc.update(
            {
                "factor": self.factor.to_json(),
                "h": self.h.to_json(),
                "j": self.j.to_json(),
                "rank_bound": self.rank.to_json(),
            }
        )
        return doc


def build_twist(D: HyperellipticModel, cert: SplitCertificate, seed: int = 0) -> TwistRecord:
    """Locate B, move everything to the twist field and form the twist by h."""
    rb = rank_bound(cert)
    B = find_elliptic_factor(cert.L_over_k, D.base, seed)
    K = twist_field(D.base, cert.ell)
    BK = B.base_change(embedding(B.base, K))
    hK = embedding(D.base, K).poly(D.h)
    T = make_twist(BK, hK)
    j = T.constant_j()
    if j is None or j != BK.j_invariant():
        raise AssertionError("twist j-invariant is not the constant j(B)")
    if T.discriminant().degree < 1:
        raise AssertionError("twist discriminant is constant")
    if not becomes_isomorphic_over_extension(T, BK, hK):
        raise AssertionError("twist does not become isomorphic to B over K(D)")
    return TwistRecord(T, B, BK, hK, j, rb)
