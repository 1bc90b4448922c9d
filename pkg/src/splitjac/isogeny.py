"""Rational cyclic kernels of odd prime order and Velu isogenies.

Convention: the curve carrying the kernel is the *domain*; Velu produces
the quotient map ``domain -> domain/<kernel>`` as
``(x, y) -> (N(x)/M(x), y * u'(x))`` with ``M`` the square of the kernel
polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .elliptic import (
    INFINITY,
    DivisionValues,
    EllipticCurve,
    division_polynomial,
    _add,
)
from .finite_field import (
    FieldElement,
    Polynomial,
    RationalFunction,
    extension,
    factor,
    is_prime,
    poly_gcd,
    roots,
)


@dataclass(frozen=True)
class KernelData:
    domain: EllipticCurve
    ell: int
    kernel_poly: Polynomial
    chi: int
    point_field_degree: int

    @property
    def inert(self) -> bool:
        return self.point_field_degree == self.ell - 1


@dataclass(frozen=True)
class IsogenyData:
    domain: EllipticCurve
    codomain: EllipticCurve
    u: RationalFunction
    y_map_factor: RationalFunction
    kernel_poly: Polynomial
    ell: int

    @property
    def N(self) -> Polynomial:
        return self.u.num

    @property
    def M(self) -> Polynomial:
        return self.u.den


def multiplicative_order(a: int, n: int) -> int:
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def _check_ell(E: EllipticCurve, ell: int, allow_ell_p: bool = False):
    if not is_prime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    if ell == E.base.p and not allow_ell_p:
        raise ValueError("ell = p is not supported")


def _orbit(E: EllipticCurve, ell: int, g: Polynomial):
    """Work in the field of definition of one root of g.

    Returns ``(xs, chi)`` where xs are the abscissae of P, 2P, ..., nP (in
    the extension) and chi is the Frobenius character on <P>, or None if
    <P> is not Frobenius-stable.
    """
    F = E.base
    n = (ell - 1) // 2
    L, emb = extension(F, g.degree)
    xi = roots(emb.poly(g))[0]
    EL = E.base_change(emb)
    x = FieldElement(L, xi)
    dv = DivisionValues(EL, x, L.one())
    xs = []
    for k in range(1, n + 1):
        num, den = dv.multiple_x(k)
        xs.append(num / den)
    frob = FieldElement(L, L.pow(xi, F.order))
    if frob not in xs:
        return xs, None
    k = xs.index(frob) + 1
    ynum, yden = dv.multiple_y_ratio(k)
    eta_frob = EL.rhs(x) ** ((F.order - 1) // 2)
    chi = k if eta_frob == ynum / yden else ell - k
    return xs, (chi, emb)


def enumerate_rational_kernels(
    E: EllipticCurve, ell: int, allow_ell_p: bool = False
) -> list[KernelData]:
    """Every Galois-stable cyclic subgroup of order ell, sorted by kernel polynomial.

    For ell = p (opt-in) only the etale subgroup is visible, which exists
    iff E is ordinary.
    """
    _check_ell(E, ell, allow_ell_p)
    n = (ell - 1) // 2
    psi = division_polynomial(E, ell, allow_char=allow_ell_p)
    if psi.degree < 1:
        return []
    found: list[KernelData] = []
    seen: list[Polynomial] = []
    for g, _ in factor(psi):
        if n % g.degree:
            continue
        if any(g.divides(s) for s in seen):
            continue
        xs, res = _orbit(E, ell, g)
        if res is None:
            seen.append(g)
            continue
        chi, emb = res
        ker = emb.preimage_poly(Polynomial.from_roots(emb.target, xs))
        seen.append(ker)
        found.append(
            KernelData(E, ell, ker, chi, multiplicative_order(chi, ell))
        )
    found.sort(key=lambda k: k.kernel_poly.key())
    return found


def frobenius_character(K: KernelData) -> int:
    """chi with Frob(P) = chi*P on the kernel, recomputed from the kernel polynomial."""
    g = factor(K.kernel_poly)[0][0]
    xs, res = _orbit(K.domain, K.ell, g)
    if res is None:
        raise ValueError("kernel polynomial does not describe a rational subgroup")
    ker = Polynomial.from_roots(res[1].target, xs)
    if res[1].preimage_poly(ker) != K.kernel_poly:
        raise ValueError("kernel polynomial is not a full cyclic subgroup")
    return res[0]


def kernel_data(
    E: EllipticCurve, ell: int, kernel_poly: Polynomial, allow_ell_p: bool = False
) -> KernelData:
    """Rebuild KernelData for a given kernel polynomial (used when verifying)."""
    _check_ell(E, ell, allow_ell_p)
    if kernel_poly.degree != (ell - 1) // 2 or kernel_poly.lc() != 1:
        raise ValueError("kernel polynomial must be monic of degree (ell-1)/2")
    if not kernel_poly.divides(division_polynomial(E, ell, allow_char=allow_ell_p)):
        raise ValueError("kernel polynomial does not divide the division polynomial")
    tmp = KernelData(E, ell, kernel_poly, 1, 1)
    chi = frobenius_character(tmp)
    return KernelData(E, ell, kernel_poly, chi, multiplicative_order(chi, ell))


def velu(K: KernelData) -> IsogenyData:
    """Kohel's kernel-polynomial form of Velu's formulas (a1 = a3 = 0)."""
    E = K.domain
    F = E.base
    ell = K.ell
    D = K.kernel_poly
    n = D.degree
    cs = [D[n - i] for i in range(4)]
    s1 = -cs[1]
    s2 = cs[2] if n >= 2 else F.zero()
    s3 = -cs[3] if n >= 3 else F.zero()
    a2, a4, a6 = E.a2, E.a4, E.a6
    p2 = s1 * s1 - 2 * s2
    p3 = s1 * s1 * s1 - 3 * s1 * s2 + 3 * s3
    v = 6 * p2 + 4 * a2 * s1 + 2 * n * a4
    w = 10 * p3 + 8 * a2 * p2 + 6 * a4 * s1 + 4 * n * a6
    codomain = EllipticCurve(F, a2, a4 - 5 * v, a6 - 4 * a2 * v - 7 * w)

    x = Polynomial.x(F)
    f = E.cubic()
    d1 = D.derivative()
    d2 = d1.derivative()
    N = (x.scale(F(ell)) - 2 * s1) * D * D - 2 * f.derivative() * d1 * D + 4 * f * (
        d1 * d1 - D * d2
    )
    M = D * D
    u = RationalFunction(N, M)
    iso = IsogenyData(E, codomain, u, u.derivative(), D, ell)
    if N.degree != ell or M.degree != ell - 1 or poly_gcd(N, M).degree != 0:
        raise AssertionError("Velu output has the wrong shape")
    return iso


def apply(I: IsogenyData, P, emb=None):
    """Image of a point P on the domain (possibly over an extension via emb)."""
    if P is INFINITY:
        return INFINITY
    x, y = P
    u, v = I.u, I.y_map_factor
    if emb is not None:
        u = RationalFunction(emb.poly(u.num), emb.poly(u.den))
        v = RationalFunction(emb.poly(v.num), emb.poly(v.den))
    ux = u(x)
    if ux is None:
        return INFINITY
    return (ux, y * v(x))


def check_cover_compatibility(I: IsogenyData, samples: int = 8, seed: int = 0) -> bool:
    """Does x(f(P)) = u(x(P)) land on the codomain, as an identity and on samples?

    Symbolic part: cubic_E(N/M) * den(v)^2 == cubic_Etilde * num(v)^2 * M^3 / ...,
    written without denominators.  Sample part: random points over a
    quadratic extension map onto the codomain, kernel abscissae are poles.
    """
    E, Et = I.codomain, I.domain
    N, M = I.u.num, I.u.den
    vn, vd = I.y_map_factor.num, I.y_map_factor.den
    lhs = (N * N * N + E.a2 * N * N * M + E.a4 * N * M * M + E.a6 * M * M * M) * vd * vd
    rhs = Et.cubic() * vn * vn * M * M * M
    if lhs != rhs:
        return False
    if N.degree <= M.degree:
        return False
    L, emb = extension(Et.base, 2)
    EtL, EL = Et.base_change(emb), E.base_change(emb)
    rng = random.Random(seed)
    for _ in range(samples):
        P = EtL.random_point(rng)
        Q = apply(I, P, emb)
        if not EL.is_on(Q):
            return False
    return True


def isogeny_is_homomorphism(I: IsogenyData, pairs: int = 50, degree: int = 2, seed: int = 0) -> bool:
    """f(P + Q) == f(P) + f(Q) on random pairs over an extension."""
    L, emb = extension(I.domain.base, degree)
    EtL, EL = I.domain.base_change(emb), I.codomain.base_change(emb)
    rng = random.Random(seed)
    for _ in range(pairs):
        P, Q = EtL.random_point(rng), EtL.random_point(rng)
        lhs = apply(I, _add(EtL, P, Q), emb)
        rhs = _add(EL, apply(I, P, emb), apply(I, Q, emb))
        if lhs != rhs:
            return False
    return True
