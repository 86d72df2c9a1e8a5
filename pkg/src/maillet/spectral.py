"""Closed-form eigensystem of A_p[c] and its determinant as an exact resultant.

For a primitive root h, the eigenvectors are nu_l = sum_j z_l^j e_{h^j} with
z_l = exp(2 pi i l / (p-1)), and the eigenvalues are f_c(z_l) where
f_c(z) = sum_k c(h^k) z^k.  Whether f_c(z_l) vanishes is decided exactly by
divisibility of f_c by the cyclotomic polynomial of z_l's order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

from .exact_linalg import DimensionError, ExactMatrix, det_bareiss
from .matrices import build_A_c, power_entries, reversal
from .zmod import OddPrime, PrimitiveRoot, as_prime, power_table

SymmetryClass = Literal["symmetric", "skew"]


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; ``coeffs[k]`` multiplies ``x**k``.  Trailing zeros are stripped."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> IntPolynomial:
        return cls((0,) * k + (coeff,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x - y for x, y in zip(a, b))

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Quotient and remainder by a monic divisor (no fractions needed)."""
        if divisor.leading != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) <= d:
            return IntPolynomial(()), self
        quot = [0] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            q = rem[k]
            if q:
                quot[k - d] = q
                for i, b in enumerate(divisor.coeffs):
                    rem[k - d + i] -= q * b
        return IntPolynomial(quot), IntPolynomial(rem[:d])


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """Phi_d, by dividing x^d - 1 by Phi_e for every proper divisor e of d."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    poly = IntPolynomial.monomial(d) - IntPolynomial((1,))
    for e in range(1, d):
        if d % e == 0:
            poly, rem = poly.divmod_monic(cyclotomic(e))
            assert rem.is_zero
    return poly


def associated_polynomial(p: int | OddPrime, c: Sequence[int], h: PrimitiveRoot) -> IntPolynomial:
    """f_c(z) = sum_{k=1}^{p-1} c(h^k mod p) z^k."""
    p = as_prime(p).value
    if len(c) != p - 1:
        raise DimensionError(f"c must have length {p - 1}, got {len(c)}")
    return IntPolynomial([0] + [c[x - 1] for x in power_table(h)])


def root_of_unity(ell: int, n: int) -> complex:
    """exp(2 pi i ell / n), with the exponent reduced first to keep the angle small."""
    return cmath.exp(2j * math.pi * (ell % n) / n)


def _entry_vector(p: int, m_or_c) -> list:
    return power_entries(p, m_or_c) if isinstance(m_or_c, int) else list(m_or_c)


def _check_ell(ell: int, p: int):
    if not 1 <= ell <= p - 1:
        raise ValueError(f"eigen index must be in 1..{p - 1}, got {ell}")


def eigenvector(p: int | OddPrime, h: PrimitiveRoot, ell: int) -> np.ndarray:
    """nu_l as a complex vector: component h^j mod p equals z_l^j."""
    p = as_prime(p).value
    _check_ell(ell, p)
    n = p - 1
    nu = np.zeros(n, dtype=complex)
    for j, hj in enumerate(power_table(h), start=1):
        nu[hj - 1] = root_of_unity(ell * j, n)
    return nu


def eigenvalue(p: int | OddPrime, m_or_c, h: PrimitiveRoot, ell: int) -> complex:
    """lambda_l = f_c(z_l), summed term by term with reduced angles."""
    p = as_prime(p).value
    _check_ell(ell, p)
    c = _entry_vector(p, m_or_c)
    n = p - 1
    return sum(
        complex(c[hj - 1]) * root_of_unity(ell * j, n)
        for j, hj in enumerate(power_table(h), start=1)
    )


def eigenpair(p: int | OddPrime, m_or_c, h: PrimitiveRoot, ell: int) -> tuple[complex, np.ndarray]:
    return eigenvalue(p, m_or_c, h, ell), eigenvector(p, h, ell)


def exact_zero_eigenvalues(p: int | OddPrime, m_or_c, h: PrimitiveRoot) -> set[int]:
    """Indices l with f_c(z_l) = 0, decided by Phi_d | f_c where d is the order of z_l."""
    p = as_prime(p).value
    f = associated_polynomial(p, _entry_vector(p, m_or_c), h)
    n = p - 1
    if f.is_zero:
        return set(range(1, p))
    vanishing_orders = {
        d for d in range(1, n + 1) if n % d == 0 and f.divmod_monic(cyclotomic(d))[1].is_zero
    }
    return {ell for ell in range(1, p) if n // math.gcd(ell, n) in vanishing_orders}


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> ExactMatrix:
    """Sylvester matrix with deg(g) shifted rows of f above deg(f) shifted rows of g."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0 or m + n == 0:
        raise ValueError("Sylvester matrix needs nonzero polynomials, not both constant")
    size = m + n
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return ExactMatrix(rows)


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod of g over the roots of f."""
    if f.is_zero or g.is_zero:
        return 0
    if g.degree == 0:
        return g.leading ** f.degree
    if f.degree == 0:
        return f.leading ** g.degree
    return det_bareiss(sylvester_matrix(f, g))


def det_spectral_exact(p: int | OddPrime, m_or_c, h: PrimitiveRoot) -> int:
    """prod_l f_c(z_l), computed exactly as Res(x^(p-1) - 1, f_c)."""
    p = as_prime(p).value
    f = associated_polynomial(p, _entry_vector(p, m_or_c), h)
    roots_poly = IntPolynomial.monomial(p - 1) - IntPolynomial((1,))
    return resultant(roots_poly, f)


def det_spectral_float(p: int | OddPrime, m_or_c, h: PrimitiveRoot) -> tuple[complex, float]:
    """Floating product of the eigenvalues, with a crude absolute error estimate.

    The estimate is (p-1)^2 * eps * prod(max(|lambda_l|, sum|c|)); it is meant
    for sanity checks only.
    """
    p = as_prime(p).value
    c = _entry_vector(p, m_or_c)
    scale = float(sum(abs(x) for x in c))
    prod_val = 1 + 0j
    prod_scale = 1.0
    for ell in range(1, p):
        lam = eigenvalue(p, c, h, ell)
        prod_val *= lam
        prod_scale *= max(abs(lam), scale)
    return prod_val, (p - 1) ** 2 * np.finfo(float).eps * prod_scale


def symmetry_class(ell: int) -> SymmetryClass:
    """J nu_l = (-1)^l nu_l."""
    return "symmetric" if ell % 2 == 0 else "skew"


@dataclass(frozen=True)
class Eigenpair:
    ell: int
    z: complex
    lam: complex
    nu: np.ndarray = field(repr=False, compare=False)
    symmetry: SymmetryClass
    exactly_zero: bool


@dataclass(frozen=True)
class Spectrum:
    p: int
    h: int
    eigenpairs: tuple[Eigenpair, ...]

    def __getitem__(self, ell: int) -> Eigenpair:
        return self.eigenpairs[ell - 1]

    def zero_indices(self) -> list[int]:
        return [e.ell for e in self.eigenpairs if e.exactly_zero]


def spectrum(p: int | OddPrime, m_or_c, h: PrimitiveRoot) -> Spectrum:
    p = as_prime(p).value
    c = _entry_vector(p, m_or_c)
    zeros = exact_zero_eigenvalues(p, c, h) if all(isinstance(x, int) for x in c) else set()
    pairs = []
    for ell in range(1, p):
        lam, nu = eigenpair(p, c, h, ell)
        if ell in zeros:
            lam = 0j
        pairs.append(
            Eigenpair(ell, root_of_unity(ell, p - 1), lam, nu, symmetry_class(ell), ell in zeros)
        )
    return Spectrum(p, h.h, tuple(pairs))


def eigen_residual(p: int | OddPrime, m_or_c, h: PrimitiveRoot, ell: int, dense: np.ndarray | None = None) -> float:
    """max-norm of A nu_l - lambda_l nu_l, with A in floating point (``dense`` if given)."""
    p = as_prime(p).value
    c = _entry_vector(p, m_or_c)
    if dense is None:
        a = build_A_c(p, c)
        dense = a.to_numpy(complex) if isinstance(a, ExactMatrix) else a
    a = dense
    lam, nu = eigenpair(p, c, h, ell)
    return float(np.max(np.abs(a @ nu - lam * nu)))


def symmetry_defect(p: int | OddPrime, h: PrimitiveRoot, ell: int) -> float:
    """max-norm of J nu_l - (-1)^l nu_l."""
    p = as_prime(p).value
    nu = eigenvector(p, h, ell)
    jnu = np.array(reversal(p - 1).apply(list(nu)))
    return float(np.max(np.abs(jnu - (-1) ** ell * nu)))
