"""Arithmetic in Z_p for odd primes p: residues, inverses, primitive roots."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NotInvertibleError(ZeroDivisionError):
    """Raised when inverting the zero residue."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for q in factorize(n):
        result -= result // q
    return result


@dataclass(frozen=True, order=True)
class OddPrime:
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or self.value < 3 or not is_prime(self.value):
            raise ValueError(f"p must be an odd prime, got {self.value!r}")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


def as_prime(p: int | OddPrime) -> OddPrime:
    return p if isinstance(p, OddPrime) else OddPrime(int(p))


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: OddPrime

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.value:
            raise ValueError(f"{self.value} is not reduced mod {self.modulus.value}")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


@dataclass(frozen=True)
class PrimitiveRoot:
    """A generator ``h`` of the multiplicative group of Z_p."""

    h: int
    modulus: OddPrime

    def __post_init__(self):
        p = self.modulus.value
        if not 0 < self.h < p:
            raise ValueError(f"{self.h} is not a nonzero residue mod {p}")
        if not _generates(self.h, p):
            raise ValueError(f"{self.h} is not a primitive root mod {p}")

    @property
    def p(self) -> int:
        return self.modulus.value

    def __int__(self) -> int:
        return self.h

    def inverse(self) -> PrimitiveRoot:
        return PrimitiveRoot(pow(self.h, -1, self.p), self.modulus)


def mod_reduce(a: int, p: int | OddPrime) -> Residue:
    p = as_prime(p)
    return Residue(a % p.value, p)


def mod_inverse(a: Residue) -> Residue:
    if a.value == 0:
        raise NotInvertibleError(f"0 has no inverse mod {a.modulus.value}")
    return Residue(pow(a.value, -1, a.modulus.value), a.modulus)


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorize(n)))


def _generates(h: int, p: int) -> bool:
    return all(pow(h, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1))


def find_primitive_roots(p: int | OddPrime) -> list[PrimitiveRoot]:
    """All primitive roots mod p, in increasing order."""
    p = as_prime(p)
    return [PrimitiveRoot(h, p) for h in range(1, p.value) if _generates(h, p.value)]


def smallest_primitive_root(p: int | OddPrime) -> PrimitiveRoot:
    p = as_prime(p)
    for h in range(1, p.value):
        if _generates(h, p.value):
            return PrimitiveRoot(h, p)
    raise AssertionError("unreachable: every prime has a primitive root")


def primitive_root(p: int | OddPrime, h: int | None = None) -> PrimitiveRoot:
    """``h`` validated as a primitive root mod p, or the smallest one if ``h`` is None."""
    p = as_prime(p)
    if h is None:
        return smallest_primitive_root(p)
    return PrimitiveRoot(h % p.value, p)


def power_table(h: PrimitiveRoot) -> list[int]:
    """``[h^1, h^2, ..., h^(p-1)] mod p``; the list index is the exponent minus one."""
    p = h.p
    table = []
    x = 1
    for _ in range(p - 1):
        x = x * h.h % p
        table.append(x)
    return table


def discrete_log_table(h: PrimitiveRoot) -> dict[int, int]:
    """Map residue ``a`` to the exponent ``j`` in 1..p-1 with ``h^j = a``."""
    return {a: j for j, a in enumerate(power_table(h), start=1)}
