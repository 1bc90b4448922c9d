"""Hyperelliptic curves D and D' from an odd-degree isogeny and a second curve.

Everything is pulled to the x-line of the isogeny codomain E: the origin of
E lies over infinity, the second curve E' is moved onto the same line by the
Mobius map matching 2-torsion abscissae, and its origin lands at the point
``c``.  D is then ``y^2 = N(x) - c*M(x)`` where ``u = N/M`` is the x-map of the
isogeny, and D' is ``y^2 = (x - t1)(x - t2)(x - t3)(N - cM)`` up to squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .elliptic import EllipticCurve, full_two_torsion
from .finite_field import (
    FieldElement,
    FiniteField,
    Polynomial,
    RationalFunction,
    factor,
    field_from_json,
    odd_part,
    poly_gcd,
)
from .isogeny import IsogenyData

PAIRINGS = tuple(permutations(range(3)))

DEGENERATE_FIBER = (
    "P = P': the genus-2 fibre degenerates to two copies of E "
    "meeting at the origin; no hyperelliptic model is produced"
)


class NotSquarefreeDefect(ValueError):
    """The fibre of u over P' is ramified; the candidate is discarded."""


class TwoTorsionNotRational(ValueError):
    pass


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d), normalised so the first nonzero entry is 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @classmethod
    def normalized(cls, a, b, c, d):
        if not a * d - b * c:
            raise ValueError("singular Mobius matrix")
        lead = next(e for e in (a, b, c, d) if e)
        inv = lead.inverse()
        return cls(a * inv, b * inv, c * inv, d * inv)

    @classmethod
    def identity(cls, F: FiniteField):
        return cls(F.one(), F.zero(), F.zero(), F.one())

    def __call__(self, z):
        """Image of z; ``None`` stands for the point at infinity."""
        if z is None:
            return None if not self.c else self.a / self.c
        den = self.c * z + self.d
        if not den:
            return None
        return (self.a * z + self.b) / den

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self o other."""
        return MobiusMap.normalized(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap.normalized(self.d, -self.b, -self.c, self.a)

    def is_affine(self) -> bool:
        return not self.c

    def to_json(self):
        return [e.to_json() for e in (self.a, self.b, self.c, self.d)]


def _to_zero_inf_one(z1, z2, z3) -> MobiusMap:
    return MobiusMap.normalized(z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1))


def mobius_through(src, dst) -> MobiusMap:
    """The unique Mobius map with src[i] -> dst[i] for three distinct finite points."""
    if len(set(src)) < 3 or len(set(dst)) < 3:
        raise ValueError("interpolation points must be distinct")
    return _to_zero_inf_one(*dst).inverse().compose(_to_zero_inf_one(*src))


def mobius_matching(E: EllipticCurve, E_prime: EllipticCurve, pairing=(0, 1, 2)) -> MobiusMap:
    """Map the x-line of E' to that of E sending e'_i to e_{pairing[i]}."""
    e = full_two_torsion(E)
    ep = full_two_torsion(E_prime)
    if e is None or ep is None:
        raise TwoTorsionNotRational("both curves need fully rational 2-torsion")
    return mobius_through(ep, [e[pairing[i]] for i in range(3)])


@dataclass(frozen=True)
class DegenerateReport:
    flag: bool
    description: str = ""


@dataclass(frozen=True)
class ConstructionFrame:
    E_tilde: EllipticCurve
    E: EllipticCurve
    E_prime: EllipticCurve
    pairing: tuple
    mu: MobiusMap
    P_prime: FieldElement | None
    P_prime_on_two_torsion: bool

    P = None  # image of the origin of E: always the point at infinity


def degenerate_report(E: EllipticCurve, E_prime: EllipticCurve, pairing=(0, 1, 2)):
    """(mu, P', report) for the pair of curves alone; P' = None means P' = P."""
    mu = mobius_matching(E, E_prime, pairing)
    c = mu(None)
    if c is None:
        return mu, c, DegenerateReport(True, DEGENERATE_FIBER)
    return mu, c, DegenerateReport(False)


def compute_frame(I: IsogenyData, E_prime: EllipticCurve, pairing=(0, 1, 2)):
    mu, c, report = degenerate_report(I.codomain, E_prime, pairing)
    e = full_two_torsion(I.codomain)
    on_two = c is not None and c in e
    frame = ConstructionFrame(I.domain, I.codomain, E_prime, tuple(pairing), mu, c, on_two)
    return frame, report


def isomorphic_respecting_pairing(E: EllipticCurve, E_prime: EllipticCurve, pairing) -> bool:
    """Brute force: is there x -> alpha*x + beta taking e'_i to e_{pairing[i]}?

    Such a map lifts to an isomorphism E' -> E over the algebraic closure
    (scale y by a square root of alpha^3), and every isomorphism of these
    models has this form on x.
    """
    e = full_two_torsion(E)
    ep = full_two_torsion(E_prime)
    F = E.base
    for av in range(1, F.order):
        alpha = FieldElement(F, av)
        beta = e[pairing[0]] - alpha * ep[0]
        if all(alpha * ep[i] + beta == e[pairing[i]] for i in range(3)):
            return True
    return False


@dataclass(frozen=True)
class HyperellipticModel:
    """y^2 = h(x) with h squarefree of degree >= 3."""

    base: FiniteField
    h: Polynomial

    def __post_init__(self):
        if self.h.degree < 3:
            raise ValueError("h must have degree at least 3")
        if poly_gcd(self.h, self.h.derivative()).degree != 0:
            raise ValueError("h must be squarefree")

    @property
    def genus(self) -> int:
        return (self.h.degree - 1) // 2

    def to_json(self):
        return {"field": self.base.to_json(), "h": self.h.to_json(), "genus": self.genus}

    @classmethod
    def from_json(cls, doc):
        F = field_from_json(doc["field"])
        H = cls(F, Polynomial.from_json(F, doc["h"]))
        if doc.get("genus") != H.genus:
            raise ValueError("stated genus does not match h")
        return H


def _require_generic(frame: ConstructionFrame):
    if frame.P_prime is None:
        raise ValueError("degenerate frame: P' = P")
    if frame.P_prime_on_two_torsion:
        raise ValueError("P' lies over a 2-torsion point")


def build_D(I: IsogenyData, frame: ConstructionFrame) -> HyperellipticModel:
    """Normalisation of the fibre product of w^2 = t - c with t = u(x)."""
    _require_generic(frame)
    N, M = I.N, I.M
    base = N - M.scale(frame.P_prime)
    h, _ = odd_part(base * M)
    if h != base.monic():
        raise NotSquarefreeDefect("N - c*M is not squarefree")
    ell = I.ell
    if h.degree != ell:
        raise AssertionError("D has the wrong degree")
    return HyperellipticModel(I.domain.base, h)


def build_D_prime(I: IsogenyData, frame: ConstructionFrame) -> HyperellipticModel:
    """Pull back the branch set {e1, e2, e3, c} along u and keep odd multiplicities."""
    _require_generic(frame)
    N, M = I.N, I.M
    e = full_two_torsion(I.codomain)
    prod = N - M.scale(frame.P_prime)
    for ei in e:
        prod = prod * (N - M.scale(ei))
    h, _ = odd_part(prod)
    ell = I.ell
    if h.degree not in (ell + 2, ell + 3):
        raise NotSquarefreeDefect("D' has unexpected ramification")
    H = HyperellipticModel(I.domain.base, h)
    if H.genus != (ell + 1) // 2:
        raise AssertionError("D' has the wrong genus")
    return H


def ramification_profile(u: RationalFunction, t=None) -> list[int]:
    """Ramification indices over t (``None`` = infinity), with multiplicity."""
    N, M = u.num, u.den
    deg = max(N.degree, M.degree)
    if t is None:
        target = M
        extra = N.degree - M.degree if N.degree > M.degree else 0
    else:
        target = N - M.scale(t)
        extra = deg - target.degree
    out = []
    if target.degree >= 1:
        for g, m in factor(target):
            out.extend([m] * g.degree)
    if extra > 0:
        out.append(extra)
    return sorted(out)


def branch_points_map_to(I: IsogenyData, D: HyperellipticModel, c) -> bool:
    """Every root of h satisfies u(root) = c (checked via h | N - cM)."""
    return D.h.divides(I.N - I.M.scale(c))
