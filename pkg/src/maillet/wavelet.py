"""Numeric check of the zero-order criterion for the refinable mask tau.

The mask R is the m-th power of the length-p averaging filter
(1/p) sum_{j<p} e^{-ij xi}, which has a simple zero at each 2 pi k / p, so R
has a zero of order exactly m there.  Everything in this module is complex
double precision; verdicts are numeric, not exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .matrices import build_A
from .spectral import det_spectral_exact
from .zmod import OddPrime, as_prime, smallest_primitive_root


@dataclass(frozen=True)
class TrigPolynomial:
    """R(xi) = sum_k r[k] e^{-i k xi} with support k = 0..len(r)-1."""

    coeffs: np.ndarray

    def __call__(self, xi):
        return self.derivative(0, xi)

    @property
    def support(self) -> np.ndarray:
        return np.arange(len(self.coeffs))

    def derivative(self, order: int, xi):
        """D^order R(xi) = sum_k r[k] (-ik)^order e^{-ik xi}."""
        k = self.support
        xi = np.asarray(xi, dtype=float)
        phases = np.exp(-1j * np.multiply.outer(xi, k))
        return phases @ (self.coeffs * (-1j * k) ** order)


def build_R(p: int | OddPrime, m: int) -> TrigPolynomial:
    p = as_prime(p).value
    if m < 1:
        raise ValueError("m must be positive")
    base = np.full(p, 1.0 / p)
    r = np.array([1.0])
    for _ in range(m):
        r = np.convolve(r, base)
    return TrigPolynomial(r.astype(complex))


def tau_restricted(p: int | OddPrime, m: int, xi: float, mask: TrigPolynomial | None = None) -> complex:
    """tau(xi, 0, ..., 0) = (1/(p-1)) sum_{k=1}^{p-1} R(k xi), valid because R(0) = 1."""
    p = as_prime(p).value
    mask = mask or build_R(p, m)
    return complex(np.sum(mask(np.arange(1, p) * xi))) / (p - 1)


def tau_full(p: int | OddPrime, m: int, omega, mask: TrigPolynomial | None = None) -> complex:
    """tau on [-pi, pi]^n straight from its definition, summing over {0..p-1}^n minus 0."""
    p = as_prime(p).value
    mask = mask or build_R(p, m)
    omega = np.asarray(omega, dtype=float)
    n = omega.size
    nus = np.array(list(itertools.product(range(p), repeat=n))[1:], dtype=float)
    total = np.sum(mask(nus @ omega))
    return complex(1 - p ** (n - 1) + total) / ((p - 1) * p ** (n - 1))


def tau_derivative_direct(p: int | OddPrime, m: int, xi: float, mask: TrigPolynomial | None = None) -> complex:
    """D^m of xi -> tau(xi, 0, ...) by differentiating each exponential e^{-i j k xi} directly."""
    p = as_prime(p).value
    mask = mask or build_R(p, m)
    j = mask.support
    total = 0j
    for k in range(1, p):
        total += np.sum(mask.coeffs * (-1j * j * k) ** m * np.exp(-1j * j * k * xi))
    return total / (p - 1)


def derivative_vector(p: int | OddPrime, m: int, mask: TrigPolynomial | None = None) -> np.ndarray:
    """v = [D^m R(2 pi k / p)] for k = 1..p-1."""
    p = as_prime(p).value
    mask = mask or build_R(p, m)
    return mask.derivative(m, 2 * math.pi * np.arange(1, p) / p)


class TauOrderResult(NamedTuple):
    criterion_holds: bool | None  # None: A_{p,m} singular, so no verdict
    max_entry: float

    @property
    def status(self) -> str:
        if self.criterion_holds is None:
            return "indeterminate"
        return "holds" if self.criterion_holds else "fails"


def tau_derivatives_via_matrix(p: int | OddPrime, m: int, mask: TrigPolynomial | None = None) -> np.ndarray:
    """u = (1/(p-1)) A_{p,m} v; entry l equals D^m tau at (2 pi l / p, 0, ...)."""
    p = as_prime(p).value
    v = derivative_vector(p, m, mask)
    return build_A(p, m).to_numpy(complex) @ v / (p - 1)


def check_tau_order(p: int | OddPrime, m: int, tol: float = 1e-8) -> TauOrderResult:
    p = as_prime(p).value
    mask = build_R(p, m)
    v = derivative_vector(p, m, mask)
    if not np.all(np.abs(v) > tol):
        raise ArithmeticError("mask derivative vanishes at a zero of R; the mask is not of exact order m")
    u = tau_derivatives_via_matrix(p, m, mask)
    max_entry = float(np.max(np.abs(u)))
    if det_spectral_exact(p, m, smallest_primitive_root(p)) == 0:
        return TauOrderResult(None, max_entry)
    return TauOrderResult(max_entry > tol, max_entry)
