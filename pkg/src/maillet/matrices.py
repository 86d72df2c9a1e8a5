"""Construction of the matrices A_{p,m} and A_p[c] and the permutations around them.

``A_{p,m}`` is the (p-1)x(p-1) matrix whose (i, j) entry is ``(i^{-1} j mod p)^m``;
``A_p[c]`` replaces the power ``k^m`` with an arbitrary entry ``c(k)``.
All indices in this module are 1-based.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exact_linalg import (
    DimensionError,
    ExactMatrix,
    as_matrix,
    is_centrosymmetric,
    matmul,
)
from .zmod import OddPrime, PrimitiveRoot, as_prime, power_table

__all__ = [
    "ExactMatrix",
    "Permutation",
    "NotCentrosymmetricError",
    "power_entries",
    "build_A",
    "build_A_c",
    "circulant",
    "reversal",
    "centro_blocks",
    "centro_similar_form",
    "similarity_permutation",
    "to_circulant",
    "shift_generator_Q",
    "q_polynomial",
    "kernel_block_vectors",
    "permutation_products",
]


class NotCentrosymmetricError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Bijection sigma on {1..n}; as a matrix it has a 1 at (i, sigma(i))."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(1, n + 1))

    def compose(self, other: Permutation) -> Permutation:
        """Permutation whose matrix is ``self.matrix() @ other.matrix()``: i -> other(self(i))."""
        if other.size != self.size:
            raise DimensionError("size mismatch")
        return Permutation(other(self(i)) for i in range(1, self.size + 1))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Permutation(inv)

    def power(self, k: int) -> Permutation:
        if k < 0:
            return self.inverse().power(-k)
        result = Permutation.identity(self.size)
        base = self
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    def matrix(self) -> ExactMatrix:
        n = self.size
        return ExactMatrix([[int(self(i) == j) for j in range(1, n + 1)] for i in range(1, n + 1)])

    def conjugate(self, a: ExactMatrix) -> ExactMatrix:
        """``P A P^T`` without materializing P: entry (i, j) is A(sigma(i), sigma(j))."""
        a = as_matrix(a)
        idx = [s - 1 for s in self.images]
        return ExactMatrix([a.rows[r][c] for c in idx] for r in idx)

    def apply(self, vector: Sequence) -> list:
        """``P v``: entry i is v(sigma(i))."""
        return [vector[s - 1] for s in self.images]


def _is_exact(values: Sequence) -> bool:
    return all(isinstance(x, numbers.Integral) for x in values)


def power_entries(p: int | OddPrime, m: int) -> list[int]:
    """The entry vector ``[k^m for k = 1..p-1]`` that gives ``A_{p,m} = A_p[k^m]``."""
    p = as_prime(p)
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    return [k**m for k in range(1, p.value)]


def _inverse_product_table(p: int) -> list[list[int]]:
    inv = [0] + [pow(i, -1, p) for i in range(1, p)]
    return [[inv[i] * j % p for j in range(1, p)] for i in range(1, p)]


def build_A_c(p: int | OddPrime, c: Sequence):
    """``A_p[c]`` with entry (i, j) = c(i^{-1} j mod p).

    Integer ``c`` gives an :class:`ExactMatrix`; anything else (floats,
    complex) gives a complex numpy array.
    """
    p = as_prime(p).value
    if len(c) != p - 1:
        raise DimensionError(f"c must have length p-1 = {p - 1}, got {len(c)}")
    table = _inverse_product_table(p)
    if _is_exact(c):
        return ExactMatrix([[c[k - 1] for k in row] for row in table])
    cv = np.asarray(c, dtype=complex)
    return cv[np.array(table) - 1]


def build_A(p: int | OddPrime, m: int) -> ExactMatrix:
    return build_A_c(p, power_entries(p, m))


def circulant(first_row: Sequence[int]) -> ExactMatrix:
    """Circ(v): entry (i, j) = v[(j - i) mod n]."""
    n = len(first_row)
    return ExactMatrix([[first_row[(j - i) % n] for j in range(n)] for i in range(n)])


def reversal(n: int) -> Permutation:
    """The reversal (exchange) matrix J of even order n."""
    if n < 2 or n % 2:
        raise ValueError(f"reversal is defined here for even n, got {n}")
    return Permutation(range(n, 0, -1))


def centro_blocks(a: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Split a centrosymmetric matrix ``[[B, JCJ], [C, JBJ]]`` into ``(B, C)``."""
    a = as_matrix(a)
    if not a.is_square or a.nrows % 2:
        raise DimensionError(f"need a square matrix of even order, got {a.shape}")
    if not is_centrosymmetric(a):
        raise NotCentrosymmetricError("matrix is not centrosymmetric")
    h = a.nrows // 2
    return a.submatrix(slice(0, h), slice(0, h)), a.submatrix(slice(h, None), slice(0, h))


def centro_similar_form(a: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """``(B - JC, B + JC)``; their determinants multiply to det(a)."""
    b, c = centro_blocks(a)
    jc = ExactMatrix(reversed(c.rows))
    return b - jc, b + jc


def similarity_permutation(h: PrimitiveRoot) -> Permutation:
    """P with P(i, j) = 1 iff j = h^i mod p, so that ``P A P^T`` is circulant."""
    return Permutation(power_table(h))


def to_circulant(p: int | OddPrime, m_or_c: int | Sequence[int], h: PrimitiveRoot) -> list:
    """First row of the circulant ``P A P^T``: entry k is c(h^(k-1) mod p).

    ``m_or_c`` is either the exponent m (for A_{p,m}) or an entry vector c.
    """
    p = as_prime(p)
    c = power_entries(p, m_or_c) if isinstance(m_or_c, numbers.Integral) else list(m_or_c)
    if len(c) != p.value - 1:
        raise DimensionError(f"c must have length {p.value - 1}")
    powers = [1] + power_table(h)[:-1]
    return [c[x - 1] for x in powers]


def shift_generator_Q(p: int | OddPrime, h: PrimitiveRoot) -> Permutation:
    """Q with Q(i, j) = 1 iff j = i*h mod p."""
    p = as_prime(p).value
    if h.p != p:
        raise ValueError(f"primitive root is mod {h.p}, not {p}")
    return Permutation(i * h.h % p for i in range(1, p))


def q_polynomial(p: int | OddPrime, c: Sequence[int], h: PrimitiveRoot) -> ExactMatrix:
    """``sum_k c(h^k mod p) Q^k`` assembled from the disjoint supports of the powers of Q."""
    p = as_prime(p).value
    q = shift_generator_Q(p, h)
    n = p - 1
    out = [[0] * n for _ in range(n)]
    qk = Permutation.identity(n)
    for hk in power_table(h):
        qk = qk.compose(q)
        coeff = c[hk - 1]
        for i, j in enumerate(qk.images):
            out[i][j - 1] += coeff
    return ExactMatrix(out)


def kernel_block_vectors(p: int | OddPrime) -> ExactMatrix:
    """Columns ``e_1 + e_{p-1} - e_k - e_{p-k}`` for k = 2..(p-1)/2, i.e. ``[C; JC]``."""
    p = as_prime(p).value
    if p < 5:
        raise ValueError("no kernel block vectors for p = 3")
    n = p - 1
    cols = []
    for k in range(2, (p - 1) // 2 + 1):
        v = [0] * n
        v[0] += 1
        v[n - 1] += 1
        v[k - 1] -= 1
        v[p - k - 1] -= 1
        cols.append(v)
    return ExactMatrix(zip(*cols))


def permutation_products(perm: Permutation, a: ExactMatrix) -> ExactMatrix:
    """``P A P^T`` by explicit matrix multiplication (independent of :meth:`Permutation.conjugate`)."""
    pm = perm.matrix()
    return matmul(matmul(pm, a), pm.T)
