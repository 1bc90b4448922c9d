"""Univariate polynomials and rational functions over a FiniteField.

Coefficients are kept as packed field integers (see ``field.py``),
little-endian, with trailing zeros stripped.  The zero polynomial has
``degree == -inf`` (``ZERO_DEGREE``) so it can never be used as an index.
"""

from __future__ import annotations

from .field import FieldElement, FiniteField, element_from_json

ZERO_DEGREE = float("-inf")


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise ValueError("coefficient from another field")
                cs.append(c.value)
            else:
                cs.append(int(c) % field.p)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, cs):
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def x(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def const(cls, field, c):
        if isinstance(c, FieldElement):
            c = c.value
        return cls._raw(field, (c,))

    @classmethod
    def from_roots(cls, field, roots):
        out = cls._raw(field, (1,))
        for r in roots:
            v = r.value if isinstance(r, FieldElement) else r
            out = out * cls._raw(field, (field.neg(v), 1))
        return out

    # -- basic protocol ------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i) -> FieldElement:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.field, v)

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def key(self):
        """Structural sort key: degree, then coefficients from the constant term."""
        return (len(self.coeffs), self.coeffs)

    def __repr__(self):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c) if F.degree == 1 else str(F.coords(c))
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(terms)

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, FieldElement):
            return Polynomial.const(self.field, other)
        if isinstance(other, int):
            return Polynomial(self.field, [other])
        return NotImplemented

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Polynomial._raw(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw(F, ())
        if F.degree == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Polynomial._raw(F, [c % p for c in out])
        out = [0] * (len(a) + len(b) - 1)
        mul, add = F.mul, F.add
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = add(out[i + j], mul(ai, bj))
        return Polynomial._raw(F, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        if isinstance(c, FieldElement):
            c = c.value
        F = self.field
        return Polynomial._raw(F, [F.mul(c, a) for a in self.coeffs])

    def __pow__(self, e: int):
        result = Polynomial._raw(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) <= db:
            return Polynomial._raw(F, ()), self
        inv = F.inv(b[-1])
        q = [0] * (len(a) - db)
        if F.degree == 1:
            p = F.p
            for k in range(len(a) - 1 - db, -1, -1):
                c = a[k + db] * inv % p
                q[k] = c
                if c:
                    for i in range(db + 1):
                        a[k + i] = (a[k + i] - c * b[i]) % p
        else:
            mul, sub = F.mul, F.sub
            for k in range(len(a) - 1 - db, -1, -1):
                c = mul(a[k + db], inv)
                q[k] = c
                if c:
                    for i in range(db + 1):
                        if b[i]:
                            a[k + i] = sub(a[k + i], mul(c, b[i]))
        return Polynomial._raw(F, q), Polynomial._raw(F, a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other) -> bool:
        return not (other % self)

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self) -> "Polynomial":
        F = self.field
        return Polynomial._raw(
            F, [F.smul(i, c) for i, c in enumerate(self.coeffs)][1:]
        )

    def __call__(self, x):
        """Evaluate at a FieldElement or raw value of the same field."""
        F = self.field
        if isinstance(x, FieldElement):
            if x.field != F:
                raise ValueError("evaluation point from another field")
            return FieldElement(F, self.eval_raw(x.value))
        return FieldElement(F, self.eval_raw(int(x) % F.p))

    def eval_raw(self, v: int) -> int:
        F = self.field
        acc = 0
        if F.degree == 1:
            p = F.p
            for c in reversed(self.coeffs):
                acc = (acc * v + c) % p
            return acc
        mul, add = F.mul, F.add
        for c in reversed(self.coeffs):
            acc = add(mul(acc, v), c)
        return acc

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial._raw(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial._raw(self.field, (c,))
        return acc

    def powmod(self, e: int, mod: "Polynomial") -> "Polynomial":
        result = Polynomial._raw(self.field, (1,))
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def map_coeffs(self, fn, field=None) -> "Polynomial":
        """Apply a raw-value map to each coefficient (e.g. an embedding)."""
        return Polynomial._raw(field or self.field, [fn(c) for c in self.coeffs])

    def to_json(self):
        F = self.field
        return [F.coords(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field, doc):
        if not isinstance(doc, list):
            raise ValueError("polynomial must be a list")
        cs = [element_from_json(field, c).value for c in doc]
        if cs and cs[-1] == 0:
            raise ValueError("polynomial has trailing zero coefficient")
        return cls._raw(field, cs)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd; gcd(f, 0) = monic(f)."""
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: Polynomial, g: Polynomial):
    """(d, s, t) with s*f + t*g = d monic."""
    F = f.field
    zero, one = Polynomial._raw(F, ()), Polynomial._raw(F, (1,))
    r0, r1, s0, s1, t0, t1 = f, g, one, zero, zero, one
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


class RationalFunction:
    """numerator/denominator in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc()
        if lc != 1:
            inv = den.field.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num}) / ({self.den})"

    def __add__(self, other):
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def derivative(self):
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def eval_raw(self, v: int):
        """Value at v, or None for a pole."""
        F = self.field
        d = self.den.eval_raw(v)
        if d == 0:
            return None
        return F.div(self.num.eval_raw(v), d)

    def __call__(self, x: FieldElement):
        r = self.eval_raw(x.value)
        return None if r is None else FieldElement(x.field, r)
