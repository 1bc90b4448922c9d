"""Field embeddings F_{p^a} -> F_{p^b} (a | b)."""

from __future__ import annotations

import functools

from .factor import roots
from .field import FieldElement, FiniteField, make_field
from .poly import Polynomial


class Embedding:
    """Ring map sending the source modulus root to ``image_of_generator``."""

    def __init__(self, source: FiniteField, target: FiniteField, image_of_generator: int):
        if source.p != target.p or target.degree % source.degree:
            raise ValueError("source degree must divide target degree")
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        if source.degree > 1:
            mod = Polynomial._raw(target, source.modulus)
            if mod.eval_raw(image_of_generator) != 0:
                raise ValueError("image is not a root of the source modulus")
        self._powers = self._basis_images()
        self._inverse = None

    def _basis_images(self):
        T = self.target
        out = [1]
        for _ in range(1, self.source.degree):
            out.append(T.mul(out[-1], self.image_of_generator))
        return out

    def raw(self, a: int) -> int:
        S, T = self.source, self.target
        if S.degree == 1:
            return a
        acc = 0
        for c, w in zip(S.coords(a), self._powers):
            if c:
                acc = T.add(acc, T.smul(c, w))
        return acc

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field != self.source:
            raise ValueError("element not in the source field")
        return FieldElement(self.target, self.raw(a.value))

    def poly(self, f: Polynomial) -> Polynomial:
        return f.map_coeffs(self.raw, self.target)

    def preimage_raw(self, b: int):
        """Source value mapping to b, or None when b is outside the image."""
        if self.source.degree == 1:
            return b if b < self.source.p else None
        if self._inverse is None:
            self._inverse = {self.raw(a): a for a in range(self.source.order)}
        return self._inverse.get(b)

    def preimage_poly(self, f: Polynomial) -> Polynomial:
        cs = []
        for c in f.coeffs:
            v = self.preimage_raw(c)
            if v is None:
                raise ValueError("coefficient not in the image of the embedding")
            cs.append(v)
        return Polynomial._raw(self.source, cs)


@functools.lru_cache(maxsize=None)
def embedding(source: FiniteField, target: FiniteField) -> Embedding:
    """Canonical embedding: the source generator goes to the smallest root."""
    if source == target:
        return Embedding(source, target, source.pack([0, 1]) if source.degree > 1 else 0)
    if source.degree == 1:
        return Embedding(source, target, 0)
    mod = Polynomial._raw(target, source.modulus)
    rs = roots(mod)
    if not rs:
        raise AssertionError("source modulus has no root in target")
    return Embedding(source, target, rs[0])


def extension(F: FiniteField, m: int) -> tuple[FiniteField, Embedding]:
    """The degree-m extension of F with its canonical embedding."""
    L = make_field(F.p, F.degree * m)
    return L, embedding(F, L)
