"""Dense linear algebra over Python integers.

Two independent determinant algorithms live here: Bareiss fraction-free
elimination and a multi-modular (CRT) method sized by the Hadamard bound.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import isqrt, prod
from typing import Iterable, Sequence

import numpy as np

from .zmod import is_prime


class DimensionError(ValueError):
    pass


class ExactMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Storage is 0-based (``m.rows[i][j]``); :meth:`entry` takes the 1-based
    indices used throughout the mathematics.
    """

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimensionError("ragged rows")
        self._rows = data
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> ExactMatrix:
        return cls([[0] * (rows if cols is None else cols) for _ in range(rows)])

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> int:
        """1-based access."""
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise IndexError(f"({i}, {j}) outside a {self.nrows}x{self.ncols} matrix")
        return self._rows[i - 1][j - 1]

    def column(self, j: int) -> tuple[int, ...]:
        """1-based column."""
        return tuple(r[j - 1] for r in self._rows)

    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix(zip(*self._rows))

    def submatrix(self, row_slice: slice, col_slice: slice) -> ExactMatrix:
        return ExactMatrix(r[col_slice] for r in self._rows[row_slice])

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array(self._rows, dtype=dtype)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self._rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self):
        return f"ExactMatrix({self.tolist()!r})"

    def _check_same_shape(self, other: ExactMatrix):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix([a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows))

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix([a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows))

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix([-a for a in r] for r in self._rows)

    def scale(self, k: int) -> ExactMatrix:
        return ExactMatrix([k * a for a in r] for r in self._rows)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return matmul(self, other)

    def apply(self, vector: Sequence[int]) -> list[int]:
        if len(vector) != self.ncols:
            raise DimensionError(f"vector of length {len(vector)} for {self.ncols} columns")
        return [sum(a * b for a, b in zip(r, vector)) for r in self._rows]


def as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    cols = list(zip(*b.rows))
    return ExactMatrix([sum(x * y for x, y in zip(r, c)) for c in cols] for r in a.rows)


def _require_square(m: ExactMatrix):
    if not m.is_square:
        raise DimensionError(f"determinant of non-square {m.nrows}x{m.ncols} matrix")


def det_bareiss(m: ExactMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = as_matrix(m)
    _require_square(m)
    a = m.tolist()
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def hadamard_bound(m: ExactMatrix) -> int:
    """Integer upper bound on ``|det m|``: product of ceil(row 2-norms)."""
    m = as_matrix(m)
    bound = 1
    for row in m.rows:
        sq = sum(x * x for x in row)
        r = isqrt(sq)
        if r * r < sq:
            r += 1
        bound *= r
    return bound


# Below 2**31 so every product of two residues fits in a signed 64-bit word.
_WORD_PRIME_CEILING = 2**31


@lru_cache(maxsize=None)
def _crt_primes(count: int) -> tuple[int, ...]:
    primes: list[int] = []
    n = _WORD_PRIME_CEILING - 1
    while len(primes) < count:
        if is_prime(n):
            primes.append(n)
        n -= 2
    return tuple(primes)


def crt_primes_for(bound: int) -> tuple[int, ...]:
    """Shortest prefix of the fixed prime sequence whose product exceeds ``2 * bound``."""
    count = 1
    while True:
        primes = _crt_primes(count)
        if prod(primes) > 2 * bound:
            return primes
        count = max(count + 1, int(count * 1.5))


def det_mod_prime(m: ExactMatrix, q: int) -> int:
    """Determinant of ``m`` reduced mod the word-size prime ``q``, in [0, q)."""
    m = as_matrix(m)
    _require_square(m)
    n = m.nrows
    a = np.array([[x % q for x in row] for row in m.rows], dtype=np.int64)
    det = 1
    for k in range(n):
        nz = np.flatnonzero(a[k:, k])
        if nz.size == 0:
            return 0
        piv = k + int(nz[0])
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        pivot = int(a[k, k])
        det = det * pivot % q
        if k + 1 < n:
            inv = pow(pivot, -1, q)
            factors = a[k + 1 :, k] * inv % q
            a[k + 1 :, k:] = (a[k + 1 :, k:] - np.outer(factors, a[k, k:]) % q) % q
    return det % q


def crt_combine(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Combine ``x = r_i mod q_i`` into ``(x mod Q, Q)`` with ``Q = prod q_i``."""
    x, modulus = 0, 1
    for r, q in zip(residues, moduli):
        # Garner step: lift x to also satisfy x = r mod q
        t = (r - x) * pow(modulus, -1, q) % q
        x += modulus * t
        modulus *= q
    return x, modulus


def det_modular_crt(m: ExactMatrix) -> int:
    """Exact determinant from residues modulo word-size primes, recombined by CRT."""
    m = as_matrix(m)
    _require_square(m)
    bound = hadamard_bound(m)
    if bound == 0:
        return 0
    primes = crt_primes_for(bound)
    residues = [det_mod_prime(m, q) for q in primes]
    x, modulus = crt_combine(residues, primes)
    return x - modulus if x > modulus // 2 else x


def rank_over_rationals(m: ExactMatrix) -> int:
    """Rank by fraction-free row reduction."""
    a = as_matrix(m).tolist()
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pivot = a[rank][col]
        for i in range(rank + 1, nrows):
            aic = a[i][col]
            a[i] = [(pivot * x - aic * y) // prev for x, y in zip(a[i], a[rank])]
        prev = pivot
        rank += 1
    return rank


def is_normal(m: ExactMatrix) -> bool:
    m = as_matrix(m)
    if not m.is_square:
        return False
    return matmul(m, m.T) == matmul(m.T, m)


def is_centrosymmetric(m: ExactMatrix) -> bool:
    m = as_matrix(m)
    if not m.is_square:
        return False
    return all(r == s[::-1] for r, s in zip(m.rows, reversed(m.rows)))


def latin_square_violation(m: ExactMatrix) -> str | None:
    """Describe the first line breaking the Latin-square property, or None."""
    m = as_matrix(m)
    if not m.is_square:
        return f"not square: {m.nrows}x{m.ncols}"
    symbols = Counter(m.rows[0])
    if len(symbols) != m.ncols:
        return "row 1 has repeated entries"
    for i, row in enumerate(m.rows, start=1):
        if Counter(row) != symbols:
            return f"row {i} is not a permutation of row 1"
    for j, col in enumerate(zip(*m.rows), start=1):
        if Counter(col) != symbols:
            return f"column {j} is not a permutation of row 1"
    return None


def is_latin_square(m: ExactMatrix) -> bool:
    return latin_square_violation(m) is None


def is_strictly_diagonally_dominant(m: ExactMatrix) -> bool:
    m = as_matrix(m)
    return m.is_square and all(
        2 * abs(r[i]) > sum(abs(x) for x in r) for i, r in enumerate(m.rows)
    )
