"""Vectorized evaluation over every element of a field (numpy).

Used for point counting, where the inner loop runs over the whole field.
Elements are processed in chunks as coordinate arrays of shape
``(degree, chunk)``.
"""

from __future__ import annotations

import functools

import numpy as np

from .field import FiniteField

CHUNK = 1 << 18


def _digits(F: FiniteField, start: int, stop: int) -> np.ndarray:
    v = np.arange(start, stop, dtype=np.int64)
    out = np.empty((F.degree, stop - start), dtype=np.int64)
    for i in range(F.degree):
        v, out[i] = np.divmod(v, F.p)
    return out


def _pack(F: FiniteField, a: np.ndarray) -> np.ndarray:
    w = F.p ** np.arange(F.degree, dtype=np.int64)
    return w @ a


def _mul(F: FiniteField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, p = F.degree, F.p
    if n == 1:
        return a * b % p
    prod = np.zeros((2 * n - 1, a.shape[1]), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            prod[i + j] += a[i] * b[j]
    prod %= p
    mod = F.modulus
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        for i in range(n):
            if mod[i]:
                prod[k - n + i] -= c * mod[i]
        prod[k - n: k] %= p
    return prod[:n] % p


def _const(F: FiniteField, c: int, width: int) -> np.ndarray:
    col = np.array(F.coords(c), dtype=np.int64).reshape(F.degree, 1)
    return np.repeat(col, width, axis=1)


@functools.lru_cache(maxsize=8)
def square_table(F: FiniteField) -> np.ndarray:
    """Boolean array indexed by packed value: True for nonzero squares."""
    table = np.zeros(F.order, dtype=bool)
    for start in range(1, F.order, CHUNK):
        stop = min(start + CHUNK, F.order)
        x = _digits(F, start, stop)
        table[_pack(F, _mul(F, x, x))] = True
    return table


def evaluate_all(F: FiniteField, coeffs, start: int, stop: int) -> np.ndarray:
    """Packed values of the polynomial (raw coeffs) at packed points start..stop-1."""
    x = _digits(F, start, stop)
    width = stop - start
    acc = np.zeros((F.degree, width), dtype=np.int64)
    for c in reversed(coeffs):
        acc = _mul(F, acc, x)
        acc = (acc + _const(F, c, width)) % F.p
    return _pack(F, acc)


def character_sum(F: FiniteField, coeffs) -> tuple[int, int]:
    """(sum of chi(f(x)), number of zeros of f) over all x in F.

    Chunks are reduced in index order so the result is independent of
    how the range is split.
    """
    squares = square_table(F)
    total = 0
    zeros = 0
    for start in range(0, F.order, CHUNK):
        stop = min(start + CHUNK, F.order)
        vals = evaluate_all(F, coeffs, start, stop)
        z = vals == 0
        sq = squares[vals]
        nz = int(z.sum())
        nsq = int(sq.sum())
        total += nsq - (stop - start - nz - nsq)
        zeros += nz
    return total, zeros
