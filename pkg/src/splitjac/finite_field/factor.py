"""Squarefree decomposition, distinct-degree and equal-degree factorization.

Randomness for equal-degree splitting comes from a counter-mode SHA-256
stream keyed by the input polynomial, so ``factor`` is a pure function.
"""

from __future__ import annotations

import hashlib

from .field import FiniteField
from .poly import Polynomial, poly_gcd


def _pth_root_poly(f: Polynomial) -> Polynomial:
    """g with g**p == f, for f whose exponents are all multiples of p."""
    F = f.field
    p = F.p
    cs = f.coeffs
    return Polynomial._raw(F, [F.pth_root(cs[i]) for i in range(0, len(cs), p)])


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Pairs (g_i, i) with monic(f) = prod g_i**i and each g_i squarefree.

    Factors sharing a multiplicity are lumped together; trivial g_i are dropped.
    """
    if f.degree < 1:
        return []
    F = f.field
    p = F.p
    f = f.monic()
    out: dict[int, Polynomial] = {}
    one = Polynomial._raw(F, (1,))

    def record(g, m):
        if g.degree >= 1:
            out[m] = out.get(m, one) * g

    def rec(f, mult):
        d = f.derivative()
        if not d:
            rec_p = _pth_root_poly(f)
            if rec_p.degree >= 1:
                rec(rec_p, mult * p)
            return
        c = poly_gcd(f, d)
        w = f // c
        i = 1
        while w.degree >= 1:
            y = poly_gcd(w, c)
            record(w // y, i * mult)
            w = y
            c = c // y
            i += 1
        if c.degree >= 1:
            rec(_pth_root_poly(c), mult * p)

    rec(f, 1)
    return sorted(((g.monic(), m) for m, g in out.items()), key=lambda t: t[1])


def squarefree_part(f: Polynomial) -> Polynomial:
    """Monic product of the distinct irreducible factors of f (its radical)."""
    out = Polynomial._raw(f.field, (1,))
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


def odd_part(f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """(r, s) with monic(f) = r * s**2 and r squarefree.

    This is the model-extraction step for ``y^2 = f``: r is the product of
    the irreducible factors appearing to an odd power.
    """
    F = f.field
    r = Polynomial._raw(F, (1,))
    s = Polynomial._raw(F, (1,))
    for g, m in squarefree_decomposition(f):
        if m % 2:
            r = r * g
        s = s * g ** (m // 2)
    return r, s


def distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """For squarefree monic f: pairs (product of all degree-d factors, d)."""
    F = f.field
    q = F.order
    x = Polynomial.x(F)
    out = []
    h = x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


class _Stream:
    def __init__(self, f: Polynomial):
        F = f.field
        seed = repr((F.p, F.degree, F.modulus, f.coeffs)).encode()
        self._seed = hashlib.sha256(seed).digest()
        self._ctr = 0

    def below(self, n: int) -> int:
        nbytes = (n.bit_length() + 7) // 8 + 8
        buf = b""
        while len(buf) < nbytes:
            buf += hashlib.sha256(self._seed + self._ctr.to_bytes(8, "big")).digest()
            self._ctr += 1
        return int.from_bytes(buf[:nbytes], "big") % n


def equal_degree(f: Polynomial, d: int, stream: _Stream | None = None) -> list[Polynomial]:
    """Split squarefree monic f, all of whose factors have degree d."""
    if f.degree == d:
        return [f]
    F = f.field
    stream = stream or _Stream(f)
    e = (F.order**d - 1) // 2
    n = f.degree
    while True:
        r = Polynomial._raw(F, [stream.below(F.order) for _ in range(n)])
        if r.degree < 1:
            continue
        g = poly_gcd(f, r)
        if 0 < g.degree < n:
            break
        g = poly_gcd(f, r.powmod(e, f) - 1)
        if 0 < g.degree < n:
            break
    return equal_degree(g, d, stream) + equal_degree(f // g, d, stream)


def factor(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors with multiplicity, sorted by ``Polynomial.key``."""
    if f.degree < 1:
        raise ValueError("factor needs a polynomial of degree >= 1")
    out = []
    for g, m in squarefree_decomposition(f):
        for part, d in distinct_degree(g):
            for h in equal_degree(part, d):
                out.append((h, m))
    out.sort(key=lambda t: (t[0].key(), t[1]))
    return out


def roots(f: Polynomial) -> list:
    """Distinct roots of f in its coefficient field, ascending packed order."""
    if f.degree < 1:
        return []
    F = f.field
    x = Polynomial.x(F)
    f = squarefree_part(f)
    g = poly_gcd(f, x.powmod(F.order, f) - x)
    if g.degree < 1:
        return []
    out = [F.neg(h.coeffs[0]) for h in equal_degree(g, 1)]
    return sorted(out)


def is_irreducible(f: Polynomial) -> bool:
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1


def minimal_irreducibles(F: FiniteField, d: int):
    """Monic irreducibles of degree d (generator, packed order)."""
    for v in range(F.order**d):
        cs = []
        for _ in range(d):
            v, c = divmod(v, F.order)
            cs.append(c)
        f = Polynomial._raw(F, cs + [1])
        if is_irreducible(f):
            yield f
