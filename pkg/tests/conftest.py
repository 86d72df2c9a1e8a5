from fractions import Fraction
from itertools import permutations
from math import gcd, prod

import pytest

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
PRIMES_TO_101 = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101]


# -- independent oracles -----------------------------------------------------


def leibniz_det(rows):
    """Permutation-sum determinant; only for n <= 7."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inversions * prod(rows[i][perm[i]] for i in range(n))
    return total


def fraction_det(rows):
    """Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    assert det.denominator == 1
    return int(det)


def fraction_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for col in range(len(a[0])):
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def brute_primitive_roots(p):
    return [h for h in range(1, p) if len({pow(h, k, p) for k in range(1, p)}) == p - 1]


def brute_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def brute_A(p, m):
    """Straight from the definition, with the inverse found by search."""
    inv = {i: next(x for x in range(1, p) if x * i % p == 1) for i in range(1, p)}
    return [[(inv[i] * j % p) ** m for j in range(1, p)] for i in range(1, p)]


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
