"""Elliptic curves y^2 = x^3 + a2*x^2 + a4*x + a6 over odd-characteristic fields.

Points are ``(x, y)`` tuples of FieldElements; the point at infinity is
``INFINITY`` (``None``).  The degree-2 map to the line is always the
x-coordinate, so the origin lies over the point at infinity of the line.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

from .finite_field import (
    Embedding,
    FieldElement,
    FiniteField,
    Polynomial,
    extension,
    field_from_json,
    roots,
)
from .finite_field.field import element_from_json
from .finite_field.vector import character_sum

INFINITY = None
COUNT_GUARD = 2**26


class OffCurve(ValueError):
    pass


@dataclass(frozen=True)
class EllipticCurve:
    base: FiniteField
    a2: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self):
        for c in (self.a2, self.a4, self.a6):
            if c.field != self.base:
                raise ValueError("coefficients must lie in the base field")
        if not self.discriminant():
            raise ValueError("singular curve: cubic has a repeated root")

    @classmethod
    def from_coeffs(cls, F: FiniteField, a2, a4, a6):
        return cls(F, F(a2), F(a4), F(a6))

    @classmethod
    def from_roots(cls, F: FiniteField, e1, e2, e3):
        e1, e2, e3 = F(e1), F(e2), F(e3)
        return cls(F, -(e1 + e2 + e3), e1 * e2 + e1 * e3 + e2 * e3, -(e1 * e2 * e3))

    # -- invariants ---------------------------------------------------------
    def cubic(self) -> Polynomial:
        return Polynomial(self.base, [self.a6, self.a4, self.a2, 1])

    def b_invariants(self):
        a2, a4, a6 = self.a2, self.a4, self.a6
        b2 = 4 * a2
        b4 = 2 * a4
        b6 = 4 * a6
        b8 = 4 * a2 * a6 - a4 * a4
        return b2, b4, b6, b8

    def discriminant(self) -> FieldElement:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def c4(self) -> FieldElement:
        b2, b4, _, _ = self.b_invariants()
        return b2 * b2 - 24 * b4

    def j_invariant(self) -> FieldElement:
        c4 = self.c4()
        return c4 * c4 * c4 / self.discriminant()

    def is_on(self, P) -> bool:
        if P is INFINITY:
            return True
        x, y = P
        if x.field != self.base or y.field != self.base:
            return False
        return y * y == ((x + self.a2) * x + self.a4) * x + self.a6

    def rhs(self, x: FieldElement) -> FieldElement:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    # -- maps between fields ----------------------------------------------
    def base_change(self, emb: Embedding) -> "EllipticCurve":
        if emb.source != self.base:
            raise ValueError("embedding source is not the base field")
        return EllipticCurve(emb.target, emb(self.a2), emb(self.a4), emb(self.a6))

    def quadratic_twist(self, d: FieldElement) -> "EllipticCurve":
        """y^2 = x^3 + d*a2*x^2 + d^2*a4*x + d^3*a6."""
        return EllipticCurve(self.base, d * self.a2, d * d * self.a4, d * d * d * self.a6)

    def key(self):
        return (self.a2.value, self.a4.value, self.a6.value)

    def __repr__(self):
        return f"EllipticCurve({self.base}, a2={self.a2}, a4={self.a4}, a6={self.a6})"

    def to_json(self):
        return {
            "field": self.base.to_json(),
            "a2": self.a2.to_json(),
            "a4": self.a4.to_json(),
            "a6": self.a6.to_json(),
        }

    @classmethod
    def from_json(cls, doc):
        F = field_from_json(doc["field"])
        return cls(
            F,
            element_from_json(F, doc["a2"]),
            element_from_json(F, doc["a4"]),
            element_from_json(F, doc["a6"]),
        )

    # -- points -----------------------------------------------------------
    def points(self):
        """All rational points, infinity first, then by x then y."""
        F = self.base
        yield INFINITY
        for x in F.elements():
            r = self.rhs(x)
            if not r:
                yield (x, r)
            elif r.is_square():
                s = FieldElement(F, F.sqrt(r.value))
                yield (x, s)
                yield (x, -s)

    def random_point(self, rng: random.Random):
        F = self.base
        while True:
            x = FieldElement(F, rng.randrange(F.order))
            r = self.rhs(x)
            if r.is_square():
                s = FieldElement(F, F.sqrt(r.value))
                return (x, s if rng.random() < 0.5 else -s)


def add(E: EllipticCurve, P, Q):
    """Chord-and-tangent addition."""
    if not E.is_on(P) or not E.is_on(Q):
        raise OffCurve("point not on curve")
    return _add(E, P, Q)


def _add(E, P, Q):
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - E.a2 - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


def neg(E: EllipticCurve, P):
    if P is INFINITY:
        return P
    return (P[0], -P[1])


def scalar_mul(E: EllipticCurve, k: int, P):
    """k*P by double-and-add."""
    if not E.is_on(P):
        raise OffCurve("point not on curve")
    if k < 0:
        return scalar_mul(E, -k, neg(E, P))
    R = INFINITY
    A = P
    while k:
        if k & 1:
            R = _add(E, R, A)
        k >>= 1
        if k:
            A = _add(E, A, A)
    return R


def count_points(E: EllipticCurve, m: int = 1) -> int:
    """#E(F_{q^m}) by summing the quadratic character over the field."""
    q = E.base.order
    if q**m > COUNT_GUARD:
        raise ValueError(f"counting guard exceeded: {q}^{m} > 2^26")
    L, emb = extension(E.base, m)
    s, _ = character_sum(L, [emb.raw(c) for c in E.cubic().coeffs])
    return L.order + 1 + s


def trace_and_ordinary(E: EllipticCurve) -> tuple[int, bool]:
    t = E.base.order + 1 - count_points(E, 1)
    return t, t % E.base.p != 0


def j_invariant(E: EllipticCurve) -> FieldElement:
    return E.j_invariant()


@functools.lru_cache(maxsize=8192)
def full_two_torsion(E: EllipticCurve):
    """The three roots of the cubic in ascending packed order, or None."""
    rs = roots(E.cubic())
    if len(rs) < 3:
        return None
    return tuple(FieldElement(E.base, r) for r in rs)


def has_rational_four_torsion(E: EllipticCurve) -> bool:
    """E[4] rational iff every difference of 2-torsion abscissae is a square."""
    es = full_two_torsion(E)
    if es is None:
        return False
    return all((ei - ej).is_square() for ei in es for ej in es if ei != ej)


# -- division polynomials ---------------------------------------------------

class DivisionValues:
    """The reduced division polynomials g_n with psi_n = g_n (n odd) and
    psi_n = 2y*g_n (n even), over any ring supporting + - * (polynomials in
    x, or field values at a fixed abscissa).
    """

    def __init__(self, E: EllipticCurve, x, one):
        b2, b4, b6, b8 = E.b_invariants()
        x2 = x * x
        x3 = x2 * x
        self.F = 4 * (x3 + E.a2 * x2 + E.a4 * x + E.a6)
        g3 = 3 * x2 * x2 + b2 * x3 + 3 * b4 * x2 + 3 * b6 * x + b8
        g4 = (
            2 * x3 * x3
            + b2 * x3 * x2
            + 5 * b4 * x2 * x2
            + 10 * b6 * x3
            + 10 * b8 * x2
            + (b2 * b8 - b4 * b6) * x
            + (b4 * b8 - b6 * b6)
        )
        zero = one - one
        self._g = {0: zero, 1: one, 2: one, 3: g3, 4: g4}
        self.x = x

    def __getitem__(self, n: int):
        g = self._g
        if n in g:
            return g[n]
        m, odd = divmod(n, 2)
        F2 = self.F * self.F
        if odd:
            a = self[m + 2] * self[m] ** 3
            b = self[m - 1] * self[m + 1] ** 3
            val = F2 * a - b if m % 2 == 0 else a - F2 * b
        else:
            val = self[m] * (
                self[m + 2] * self[m - 1] ** 2 - self[m - 2] * self[m + 1] ** 2
            )
        g[n] = val
        return val

    def psi_squared(self, n: int):
        v = self[n] * self[n]
        return v * self.F if n % 2 == 0 else v

    def multiple_x(self, k: int):
        """x(kP) as a (numerator, denominator) pair: x - psi_{k-1}psi_{k+1}/psi_k^2."""
        num = self[k - 1] * self[k + 1]
        if k % 2:
            num = num * self.F
        den = self.psi_squared(k)
        return self.x * den - num, den

    def multiple_y_ratio(self, k: int):
        """y(kP)/y(P) as a (numerator, denominator) pair."""
        den = self[k] ** 4
        if k % 2 == 0:
            den = den * self.F * self.F
        return self[2 * k], den


def division_polynomial(E: EllipticCurve, n: int, allow_char: bool = False) -> Polynomial:
    """psi_n as a polynomial in x, for odd n.

    With n divisible by p the recursion is still valid, but psi_n only sees
    the etale part of E[n]; callers must opt in with ``allow_char``.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    if n % E.base.p == 0 and not allow_char:
        raise ValueError("n divisible by the characteristic is not supported")
    F = E.base
    dv = DivisionValues(E, Polynomial.x(F), Polynomial(F, [1]))
    return dv[n]
