"""Prime fields and their extensions.

Elements of a field of order p**n are stored as packed integers
``c_0 + c_1*p + ... + c_{n-1}*p**(n-1)`` where ``c_i`` are the coordinates
in the power basis of the modulus root.  The prime subfield therefore
occupies the integers ``0 .. p-1`` in every field.  The natural order on
packed integers is the canonical order used everywhere in the package
(sorting roots, choosing square roots, choosing moduli).

Small fields get log/exp/Zech tables so that every operation is a couple
of table lookups; larger fields fall back to coordinate arithmetic.
"""

from __future__ import annotations

import functools
from array import array
from itertools import product

import numpy as np

MAX_ORDER = 2**31
TABLE_LIMIT = 2**21


class NotASquare(ArithmeticError):
    """Raised by sqrt when the argument has quadratic character -1."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p on plain int lists (little-endian) -----------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, mod, p):
    """a*b mod (monic) mod over F_p, a and b already reduced."""
    n = len(mod) - 1
    if not a or not b:
        return []
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod_[i + j] += ai * bj
    for k in range(len(prod_) - 1, n - 1, -1):
        c = prod_[k] % p
        if c:
            off = k - n
            for i in range(n):
                prod_[off + i] -= c * mod[i]
        prod_[k] = 0
    return _trim([c % p for c in prod_[:n]])


def _ppowmod(a, e, mod, p):
    result = [1]
    base = a
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, mod, p)
    return result


def _pdivmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for i, bi in enumerate(b):
                a[k + i] = (a[k + i] - c * bi) % p
    return _trim(q), _trim(a[: len(b) - 1])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, bi in enumerate(b):
        a[i] = (a[i] - bi) % p
    return _trim(a)


def is_irreducible_mod_p(f, p) -> bool:
    """Rabin's test for a monic polynomial over F_p (little-endian ints)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**n, f, p) != x:
        return False
    for r in prime_factors(n):
        t = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, t, p)) > 1:
            return False
    return True


def minimal_modulus(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n with the smallest packed value.

    Candidates are ordered by ``sum(c_i * p**i)`` over the non-leading
    coefficients, so the top coefficient is compared first.
    """
    for packed in range(p**n):
        coeffs = []
        v = packed
        for _ in range(n):
            v, c = divmod(v, p)
            coeffs.append(c)
        if coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """The field F_{p^degree} = F_p[t]/(modulus).

    Use :func:`make_field` to construct instances; it caches them so that
    tables are built once per field.
    """

    def __init__(self, p: int, degree: int = 1, modulus=None):
        if not is_prime(p) or p == 2:
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        if degree < 1:
            raise ValueError("degree must be positive")
        if p**degree > MAX_ORDER:
            raise ValueError(f"field of order {p}^{degree} exceeds 2^31")
        self.p = p
        self.degree = degree
        self.order = p**degree
        if degree == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = minimal_modulus(p, degree)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != degree + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of the field degree")
            if not is_irreducible_mod_p(list(modulus), p):
                raise ValueError("modulus is reducible")
            self.modulus = modulus
        self._tables = None
        self._key = (p, degree, self.modulus)

    # -- identity --------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.degree == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.degree}, modulus={list(self.modulus)})"

    @property
    def characteristic(self):
        return self.p

    def to_json(self):
        return {
            "p": self.p,
            "degree": self.degree,
            "modulus": list(self.modulus) if self.modulus else None,
        }

    # -- conversion ------------------------------------------------------
    def coords(self, a: int) -> list[int]:
        out = []
        p = self.p
        for _ in range(self.degree):
            a, c = divmod(a, p)
            out.append(c)
        return out

    def pack(self, coords) -> int:
        v = 0
        for c in reversed(list(coords)):
            v = v * self.p + (int(c) % self.p)
        return v

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.degree:
                raise ValueError("too many coordinates")
            return FieldElement(self, self.pack(value))
        return FieldElement(self, int(value) % self.p)

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        for v in range(self.order):
            yield FieldElement(self, v)

    # -- raw arithmetic on packed ints ----------------------------------
    def _tab(self):
        if self._tables is None and self.degree > 1 and self.order <= TABLE_LIMIT:
            self._tables = _build_tables(self)
        return self._tables

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.p
        t = self._tab()
        if t is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            log, exp, zech, qm1 = t
            la = log[a]
            z = zech[(log[b] - la) % qm1]
            if z < 0:
                return 0
            return exp[la + z]
        return self._cadd(a, b)

    def neg(self, a: int) -> int:
        if a == 0:
            return 0
        if self.degree == 1:
            return self.p - a
        t = self._tab()
        if t is not None:
            return t[1][t[0][a] + t[3] // 2]
        p = self.p
        return self.pack([(p - c) % p for c in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        t = self._tab()
        if t is not None:
            log, exp = t[0], t[1]
            return exp[log[a] + log[b]]
        return self.pack(_pmulmod(self.coords(a), self.coords(b), self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return pow(a, self.p - 2, self.p)
        t = self._tab()
        if t is not None:
            log, exp, _, qm1 = t
            return exp[(qm1 - log[a]) % qm1]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.degree == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 1 if e == 0 else 0
        t = self._tab()
        if t is not None:
            log, exp, _, qm1 = t
            return exp[log[a] * e % qm1]
        return self.pack(_ppowmod(self.coords(a), e, self.modulus, self.p))

    def smul(self, n: int, a: int) -> int:
        """Integer multiple n*a."""
        return self.mul(n % self.p, a)

    def _cadd(self, a, b):
        p = self.p
        out = 0
        scale = 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * scale
            scale *= p
        return out

    def chi(self, a: int) -> int:
        """Quadratic character in {-1, 0, 1}."""
        if a == 0:
            return 0
        if self.degree == 1:
            return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1
        t = self._tab()
        if t is not None:
            return 1 if t[0][a] % 2 == 0 else -1
        return 1 if self.pow(a, (self.order - 1) // 2) == 1 else -1

    def sqrt(self, a: int) -> int:
        """Smaller (in packed order) square root; raises NotASquare."""
        if a == 0:
            return 0
        if self.chi(a) != 1:
            raise NotASquare(f"{self.coords(a)} is not a square")
        t = self._tab()
        if t is not None:
            r = t[1][t[0][a] // 2]
        else:
            r = self._tonelli(a)
        return min(r, self.neg(r))

    def _tonelli(self, a):
        q = self.order
        s, m = 0, q - 1
        while m % 2 == 0:
            s, m = s + 1, m // 2
        z = 2
        while self.chi(z) != -1:
            z += 1
        c = self.pow(z, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != 1:
            i, tt = 0, t
            while tt != 1:
                tt = self.mul(tt, tt)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return x

    def frobenius(self, a: int, k: int = 1) -> int:
        """a ** (p**k)."""
        return self.pow(a, self.p ** (k % self.degree))

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.p ** (self.degree - 1))

    def primitive_element(self) -> int:
        t = self._tab()
        if t is not None:
            return t[1][1]
        return _find_primitive(self)

    def key(self, a: int):
        """Coordinate tuple used when a structural sort key is needed."""
        return tuple(self.coords(a))


def _find_primitive(F):
    qm1 = F.order - 1
    rs = prime_factors(qm1)
    for g in range(2, F.order):
        if all(_raw_pow(F, g, qm1 // r) != 1 for r in rs):
            return g
    raise AssertionError("no primitive element")  # pragma: no cover


def _raw_pow(F, a, e):
    if F.degree == 1:
        return pow(a, e, F.p)
    return F.pack(_ppowmod(F.coords(a), e, F.modulus, F.p))


def _build_tables(F):
    """log/exp/Zech tables via blocked powers of a primitive element."""
    p, n, q = F.p, F.degree, F.order
    qm1 = q - 1
    g = _find_primitive(F)
    # matrix of multiplication by g acting on coordinate columns
    mat = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        col = F.coords(F.pack(_pmulmod(F.coords(g), [0] * i + [1], F.modulus, p)))
        mat[:, i] = col
    block = min(1024, qm1)
    cols = np.zeros((n, block), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = 1
    for k in range(block):
        cols[:, k] = v
        v = mat @ v % p
    step = np.eye(n, dtype=np.int64)
    base = mat.copy()
    e = block
    while e:
        if e & 1:
            step = step @ base % p
        base = base @ base % p
        e >>= 1
    weights = p ** np.arange(n, dtype=np.int64)
    exp_np = np.empty(2 * qm1, dtype=np.int64)
    done = 0
    cur = cols
    while done < qm1:
        take = min(block, qm1 - done)
        exp_np[done:done + take] = weights @ cur[:, :take]
        done += take
        cur = step @ cur % p
    exp_np[qm1:] = exp_np[:qm1]
    log_np = np.full(q, -1, dtype=np.int64)
    log_np[exp_np[:qm1]] = np.arange(qm1)
    # Zech: log(1 + g^k)
    c0 = exp_np[:qm1] % p
    plus_one = exp_np[:qm1] - c0 + (c0 + 1) % p
    zech_np = np.where(plus_one == 0, -1, log_np[plus_one])
    code = "l"
    return (
        array(code, log_np.tolist()),
        array(code, exp_np.tolist()),
        array(code, zech_np.tolist()),
        qm1,
    )


@functools.lru_cache(maxsize=None)
def make_field(p: int, degree: int = 1) -> FiniteField:
    """The field of order p**degree with the canonical (minimal) modulus."""
    return FiniteField(p, degree)


class FieldElement:
    """Immutable element of a :class:`FiniteField`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    @property
    def coordinates(self) -> list[int]:
        return self.field.coords(self.value)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mismatched parent fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p and (
                self.value < self.field.p
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key, self.value))

    def __bool__(self):
        return self.value != 0

    def __lt__(self, other):
        return self.value < other.value

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.value)
        return f"{self.field.coords(self.value)}"

    def is_square(self) -> bool:
        return self.field.chi(self.value) >= 0

    def to_json(self):
        return self.field.coords(self.value)


def quadratic_character(a: FieldElement) -> int:
    return a.field.chi(a.value)


def sqrt(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.sqrt(a.value))


def element_from_json(F: FiniteField, coords) -> FieldElement:
    if not isinstance(coords, list) or len(coords) != F.degree:
        raise ValueError(f"expected {F.degree} coordinates")
    for c in coords:
        if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < F.p:
            raise ValueError(f"coordinate {c!r} out of range")
    return FieldElement(F, F.pack(coords))


def field_from_json(doc) -> FiniteField:
    if not isinstance(doc, dict):
        raise ValueError("field must be an object")
    F = make_field(doc["p"], doc["degree"])
    mod = doc.get("modulus")
    if (list(F.modulus) if F.modulus else None) != mod:
        raise ValueError("modulus is not the canonical one")
    return F


def all_tuples(F: FiniteField, n: int):
    """All n-tuples of raw field values in lexicographic order."""
    return product(range(F.order), repeat=n)
