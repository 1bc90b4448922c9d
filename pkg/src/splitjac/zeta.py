"""Point counts, L-polynomials, p-ranks and the splitting checks.

All L-polynomial arithmetic is on Python integers (exact, unbounded).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .construct import HyperellipticModel
from .finite_field import extension
from .finite_field.vector import character_sum

COUNT_GUARD = 2**26


class CountInconsistency(ValueError):
    """Point counts that no genus-g L-polynomial can produce."""


@dataclass(frozen=True)
class LPolynomial:
    coeffs: tuple
    q: int
    g: int

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.g + 1 or self.coeffs[0] != 1:
            raise ValueError("L-polynomial must have length 2g+1 and constant term 1")

    def functional_equation_ok(self) -> bool:
        c, q, g = self.coeffs, self.q, self.g
        return all(c[2 * g - i] == q ** (g - i) * c[i] for i in range(g + 1))

    def power_sums(self, n: int) -> list[int]:
        """S_1..S_n, sums of m-th powers of the reciprocal roots."""
        c = list(self.coeffs) + [0] * max(0, n + 1 - len(self.coeffs))
        S = []
        for m in range(1, n + 1):
            s = -m * c[m] - sum(S[i - 1] * c[m - i] for i in range(1, m))
            S.append(s)
        return S

    def counts(self, n: int | None = None) -> list[int]:
        n = self.g if n is None else n
        return [self.q**m + 1 - s for m, s in enumerate(self.power_sums(n), start=1)]

    def weil_ok(self, n: int | None = None) -> bool:
        n = 2 * self.g if n is None else n
        g, q = self.g, self.q
        return all(s * s <= 4 * g * g * q**m for m, s in enumerate(self.power_sums(n), 1))

    def mod_p_degree(self, p: int) -> int:
        deg = 0
        for i, c in enumerate(self.coeffs):
            if c % p:
                deg = i
        return deg

    def to_json(self):
        return list(self.coeffs)


def count_points_hyperelliptic(H: HyperellipticModel, m: int = 1) -> int:
    q = H.base.order
    if q**m > COUNT_GUARD:
        raise ValueError(f"counting guard exceeded: {q}^{m} > 2^26")
    L, emb = extension(H.base, m)
    hc = [emb.raw(c) for c in H.h.coeffs]
    s, _ = character_sum(L, hc)
    affine = L.order + s
    if H.h.degree % 2:
        inf = 1
    else:
        inf = 2 if L.chi(hc[-1]) == 1 else 0
    return affine + inf


def lpoly_from_counts(counts, q: int, g: int) -> LPolynomial:
    """Newton's identities on S_m = q^m + 1 - N_m, then the functional equation."""
    if len(counts) < g:
        raise ValueError(f"need {g} counts, got {len(counts)}")
    S = [q**m + 1 - n for m, n in enumerate(counts[:g], start=1)]
    for m, s in enumerate(S, 1):
        if s * s > 4 * g * g * q**m:
            raise CountInconsistency(f"N_{m} violates the Weil bound")
    c = [Fraction(1)]
    for m in range(1, g + 1):
        c.append(-sum(S[i - 1] * c[m - i] for i in range(1, m + 1)) / m)
    if any(x.denominator != 1 for x in c):
        raise CountInconsistency("non-integral L-polynomial coefficient")
    ints = [int(x) for x in c]
    full = ints + [q ** (g - i) * ints[i] for i in range(g - 1, -1, -1)]
    return LPolynomial(tuple(full), q, g)


def lpolynomial(H: HyperellipticModel) -> tuple[LPolynomial, list[int]]:
    counts = [count_points_hyperelliptic(H, m) for m in range(1, H.genus + 1)]
    return lpoly_from_counts(counts, H.base.order, H.genus), counts


# -- exact linear algebra over Z -----------------------------------------------

def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def _matpow(A, e):
    n = len(A)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    while e:
        if e & 1:
            R = _matmul(R, A)
        e >>= 1
        if e:
            A = _matmul(A, A)
    return R


def companion(monic_le):
    """Companion matrix of a monic polynomial given little-endian."""
    n = len(monic_le) - 1
    C = [[0] * n for _ in range(n)]
    for i in range(1, n):
        C[i][i - 1] = 1
    for i in range(n):
        C[i][n - 1] = -monic_le[i]
    return C


def charpoly(A) -> list[int]:
    """det(x*I - A), little-endian, by Faddeev-LeVerrier (exact integer division)."""
    n = len(A)
    c = [0] * (n + 1)
    c[n] = 1
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = _matmul(A, Mk)
        Mk = [[AM[i][j] + (c[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AMk = _matmul(A, Mk)
        tr = sum(AMk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("inexact Faddeev-LeVerrier step")
        c[n - k] = -tr // k
    return c


def base_change(L: LPolynomial, n: int) -> LPolynomial:
    """L-polynomial over the degree-n extension via the n-th power of Frobenius."""
    if n == 1:
        return L
    recip = list(reversed(L.coeffs))  # monic; its roots are the Frobenius eigenvalues
    C = companion(recip)
    cp = charpoly(_matpow(C, n))
    return LPolynomial(tuple(reversed(cp)), L.q**n, L.g)


def p_rank(L: LPolynomial, p: int) -> int:
    return L.mod_p_degree(p)


def inert_shape_check(L: LPolynomial, g: int | None = None) -> bool:
    """Every coefficient whose index is not a multiple of g vanishes."""
    g = L.g if g is None else g
    return all(c == 0 for i, c in enumerate(L.coeffs) if i % g)


def expand_power(a: int, qK: int, g: int) -> list[int]:
    """Coefficients of (1 - a*T + qK*T^2)^g."""
    out = [1]
    for _ in range(g):
        nxt = [0] * (len(out) + 2)
        for i, c in enumerate(out):
            nxt[i] += c
            nxt[i + 1] -= a * c
            nxt[i + 2] += qK * c
        out = nxt
    return out


def power_of_elliptic(L_K: LPolynomial, g: int | None = None, p: int | None = None):
    """Return {'a', 'q_K', 'ordinary'} if L_K = (1 - aT + q_K T^2)^g, else None."""
    g = L_K.g if g is None else g
    qK = L_K.q
    c1 = L_K.coeffs[1]
    if c1 % g:
        return None
    a = -c1 // g
    if a * a > 4 * qK:
        return None
    if expand_power(a, qK, g) != list(L_K.coeffs):
        return None
    return {"a": a, "q_K": qK, "ordinary": None if p is None else a % p != 0}


# -- Cartier-Manin --------------------------------------------------------------

@dataclass(frozen=True)
class CartierManinMatrix:
    entries: tuple  # rows of raw field values
    field: object = field(repr=False)


def _rank(F, rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def cartier_manin(H: HyperellipticModel):
    """(matrix, stable rank); M[i][j] = coeff of x^(i*p - j) in h^((p-1)/2)."""
    F = H.base
    p = F.p
    g = H.genus
    hp = H.h ** ((p - 1) // 2)
    M = [
        [hp.coeffs[i * p - j] if 0 <= i * p - j < len(hp.coeffs) else 0 for j in range(1, g + 1)]
        for i in range(1, g + 1)
    ]
    # stable rank of M^(s^(k-1)) ... M^(s) M, s the p-power Frobenius
    prod = [row[:] for row in M]
    steps = F.degree * g
    cur = M
    for _ in range(1, steps):
        cur = [[F.frobenius(v) for v in row] for row in cur]
        prod = [
            [
                _dot(F, cur[i], [prod[t][j] for t in range(g)])
                for j in range(g)
            ]
            for i in range(g)
        ]
    return CartierManinMatrix(tuple(tuple(r) for r in M), F), _rank(F, prod)


def _dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def hasse_witt_is_ordinary(H: HyperellipticModel) -> bool:
    return cartier_manin(H)[1] == H.genus


@dataclass(frozen=True)
class SplitCertificate:
    L_over_k: LPolynomial
    K_degree: int
    L_over_K: LPolynomial
    a: int
    q_K: int
    ordinary: bool
    inert_shape_ok: bool
    p_rank: int
    cartier_manin_rank: int
    ell: int

    def to_json(self):
        return {
            "L_k": list(self.L_over_k.coeffs),
            "ell": self.ell,
            "K_degree": self.K_degree,
            "L_K": list(self.L_over_K.coeffs),
            "a": self.a,
            "q_K": self.q_K,
            "ordinary": self.ordinary,
            "inert_shape_ok": self.inert_shape_ok,
            "p_rank": self.p_rank,
            "cartier_manin_rank": self.cartier_manin_rank,
        }


def split_certificate(H: HyperellipticModel, ell: int, L_k: LPolynomial | None = None):
    """Run the splitting checks on D; returns (certificate or None, reason)."""
    p = H.base.p
    g = H.genus
    if L_k is None:
        L_k, _ = lpolynomial(H)
    shape = inert_shape_check(L_k, g)
    L_K = base_change(L_k, ell - 1)
    pw = power_of_elliptic(L_K, g, p)
    if pw is None:
        return None, "not_power"
    pr = p_rank(L_k, p)
    cm = cartier_manin(H)[1]
    cert = SplitCertificate(
        L_k, ell - 1, L_K, pw["a"], pw["q_K"], pw["ordinary"], shape, pr, cm, ell
    )
    return cert, None
