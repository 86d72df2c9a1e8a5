"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import csv
import math
import random
import time

import mpmath
import numpy as np
import pytest

from conftest import PRIMES_TO_101
from maillet.cli import main
from maillet.exact_linalg import det_bareiss, det_modular_crt, is_strictly_diagonally_dominant, matmul
from maillet.matrices import build_A, build_A_c, kernel_block_vectors, power_entries, reversal, to_circulant
from maillet.spectral import det_spectral_exact, eigen_residual, exact_zero_eigenvalues, symmetry_defect
from maillet.verify import (
    maillet_determinant,
    random_entry_vector,
    verify_basic,
    verify_general,
    verify_spectrum,
    verify_structure,
)
from maillet.wavelet import build_R, check_tau_order, tau_full, tau_restricted
from maillet.zmod import euler_phi, find_primitive_roots, primitive_root

PRIMES_5_31 = [5, 7, 11, 13, 17, 19, 23, 29, 31]
PRIMES_TO_31 = [3] + PRIMES_5_31
SEED = 20130513


def record(log, number, title, ok, detail, elapsed=None, limit=None):
    within = limit is None or elapsed <= limit
    timing = "" if elapsed is None else f" [{elapsed:.2f}s{'' if limit is None else f' / {limit}s'}]"
    log.append(f"{'PASS' if ok and within else 'FAIL'} criterion {number}: {title}: {detail}{timing}")
    assert ok, detail
    assert within, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_closed_form_p3(acceptance_log):
    t0 = time.perf_counter()
    bad = [m for m in range(1, 13) if det_bareiss(build_A(3, m)) != 1 - 4**m]
    record(acceptance_log, 1, "det A_{3,m} = 1 - 4^m, m = 1..12", not bad, f"mismatches {bad}",
           time.perf_counter() - t0, 1)


def test_criterion_02_singular_m1(acceptance_log):
    t0 = time.perf_counter()
    dets = {p: det_bareiss(build_A(p, 1)) for p in PRIMES_5_31}
    nonzero = [p for p, d in dets.items() if d != 0]
    record(acceptance_log, 2, "det A_{p,1} = 0 for 5 <= p <= 31", not nonzero, f"nonzero at {nonzero}",
           time.perf_counter() - t0, 5)


def test_criterion_03_divisibility(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for p in PRIMES_5_31:
        for m in range(1, 7):
            d = det_bareiss(build_A(p, m))
            if d % 4 or d % p:
                bad.append((p, m, d))
    record(acceptance_log, 3, "4 | det and p | det, p in 5..31, m in 1..6", not bad, f"{54 - len(bad)}/54 cells ok",
           time.perf_counter() - t0, 60)


def test_criterion_04_three_oracles(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    cases = 0
    for p in PRIMES_5_31:
        h = primitive_root(p)
        for m in range(1, 7):
            a = build_A(p, m)
            values = {det_bareiss(a), det_modular_crt(a), det_spectral_exact(p, m, h)}
            cases += 1
            if len(values) != 1:
                bad.append((p, m, values))
    rng = random.Random(SEED)
    for p in [q for q in PRIMES_TO_31 if q <= 19]:
        h = primitive_root(p)
        for _ in range(20):
            c = random_entry_vector(p, rng, distinct=False)
            a = build_A_c(p, c)
            values = {det_bareiss(a), det_modular_crt(a), det_spectral_exact(p, c, h)}
            cases += 1
            if len(values) != 1:
                bad.append((p, c, values))
    record(acceptance_log, 4, "bareiss = crt = spectral", not bad, f"{cases - len(bad)}/{cases} cases agree",
           time.perf_counter() - t0, 120)


def test_criterion_05_eigen_residuals(acceptance_log):
    t0 = time.perf_counter()
    worst_ratio = 0.0
    bad = []
    for p in PRIMES_TO_101:
        h = primitive_root(p)
        for m in (1, 2, 3):
            dense = build_A(p, m).to_numpy(complex)
            bound = 1e-9 * (p - 1) ** (m + 1)
            for ell in range(1, p):
                res = eigen_residual(p, m, h, ell, dense)
                worst_ratio = max(worst_ratio, res / bound)
                if res > bound:
                    bad.append((p, m, ell, res))
    record(acceptance_log, 5, "|A nu - lambda nu| <= 1e-9 (p-1)^(m+1), p <= 101, m <= 3", not bad,
           f"worst residual/bound = {worst_ratio:.2e}", time.perf_counter() - t0, 60)


def test_criterion_06_zero_census(acceptance_log):
    bad = []
    for p in PRIMES_5_31:
        zeros = exact_zero_eigenvalues(p, 1, primitive_root(p))
        expected = set(range(2, p - 1, 2))
        if zeros != expected or len(zeros) != (p - 1) // 2 - 1:
            bad.append((p, sorted(zeros)))
    record(acceptance_log, 6, "m = 1 exact zeros are the even l != p-1", not bad, f"mismatches {bad}")


def test_criterion_07_kernel_identity(acceptance_log):
    bad = []
    for p in PRIMES_5_31:
        k = kernel_block_vectors(p)
        if any(any(row) for row in matmul(build_A(p, 1), k).rows):
            bad.append(p)
    record(acceptance_log, 7, "A_{p,1} times the block kernel vectors is 0", not bad, f"nonzero product at {bad}")


def test_criterion_08_symmetry_classes(acceptance_log):
    worst = 0.0
    bad_sign = []
    for p in PRIMES_TO_101:
        h = primitive_root(p)
        worst = max(worst, max(symmetry_defect(p, h, ell) for ell in range(1, p)))
        if p >= 5 and not verify_spectrum(p, 1, h)["spec.pm1"].passed:
            bad_sign.append(p)
    ok = worst <= 1e-10 and not bad_sign
    record(acceptance_log, 8, "J nu_l = (-1)^l nu_l, p <= 101", ok,
           f"max defect {worst:.2e}; +-1 vector class wrong at {bad_sign}")


def test_criterion_09_structure_suite(acceptance_log):
    failures = []
    for p in PRIMES_TO_31:
        for m in (1, 2, 3):
            for report in (verify_basic(p, m), verify_structure(p, m)):
                failures += [(p, m, c.id) for c in report.failed()]
    rng = random.Random(SEED)
    for p in PRIMES_TO_31:
        c, c2 = random_entry_vector(p, rng), random_entry_vector(p, rng)
        failures += [(p, "c", chk.id) for chk in verify_general(p, c, c2, seed=SEED).failed()]
    record(acceptance_log, 9, "structure checks for A_{p,m} and random A_p[c], p <= 31", not failures,
           f"failed checks {failures[:5]}")


def test_criterion_10_circulant_count(acceptance_log):
    bad = []
    for p in PRIMES_TO_31:
        for m in (1, 2, 3):
            rows = {tuple(to_circulant(p, m, h)) for h in find_primitive_roots(p)}
            if len(rows) != euler_phi(p - 1):
                bad.append((p, m, len(rows)))
    record(acceptance_log, 10, "distinct circulant first rows = phi(p-1), p <= 31", not bad, f"mismatches {bad}")


def test_criterion_11_maillet(acceptance_log):
    t0 = time.perf_counter()
    values = {p: maillet_determinant(p) for p in (5, 7, 11, 13)}
    ok = all(r.nonzero and r.value % p ** ((p - 3) // 2) == 0 for p, r in values.items())
    detail = ", ".join(f"p={p}: {r.value}" for p, r in values.items())
    record(acceptance_log, 11, "Maillet det nonzero and divisible by p^((p-3)/2)", ok, detail,
           time.perf_counter() - t0, 5)


@pytest.mark.slow
def test_criterion_12_conjecture_scan(acceptance_log, tmp_path, capsys):
    t0 = time.perf_counter()
    outputs = []
    codes = []
    for jobs in (1, 2):
        path = tmp_path / f"scan_{jobs}.csv"
        codes.append(main(["scan", "--p-max", "50", "--m-min", "2", "--m-max", "8", "--jobs", str(jobs),
                           "-o", str(path)]))
        outputs.append(path.read_bytes())
    capsys.readouterr()
    elapsed = time.perf_counter() - t0
    rows = list(csv.DictReader(outputs[0].decode().splitlines()))
    counter = [(r["p"], r["m"]) for r in rows if r["det_is_zero"] == "true"]
    disagree = [(r["p"], r["m"]) for r in rows if r["methods_agree"] != "true"]
    ok = outputs[0] == outputs[1] and not counter and not disagree and codes == [0, 0] and len(rows) == 14 * 7
    record(acceptance_log, 12, "scan p <= 50, m in 2..8", ok,
           f"{len(rows)} rows, counterexamples {counter}, disagreements {disagree}, "
           f"jobs 1 vs 2 identical: {outputs[0] == outputs[1]}", elapsed, 600)


def test_criterion_13_dominance(acceptance_log):
    cells = []
    bad = []
    for p in (3, 5, 7, 11, 13):
        for m in range(1, 41):
            if (p - 1) ** m <= sum(k**m for k in range(1, p - 1)):
                continue
            cells.append((p, m))
            a = build_A(p, m)
            ja = matmul(reversal(p - 1).matrix(), a)
            if not is_strictly_diagonally_dominant(ja) or det_bareiss(a) == 0:
                bad.append((p, m))
    ok = not bad and (5, 4) in cells
    record(acceptance_log, 13, "J A strictly diagonally dominant and det != 0 in the dominance regime", ok,
           f"{len(cells) - len(bad)}/{len(cells)} cells, failures {bad}")


def _mp_mask(p, m):
    return lambda xi: (sum(mpmath.exp(-1j * j * xi) for j in range(p)) / p) ** m


def _central_difference(f, x, order, step=mpmath.mpf("1e-12")):
    x = mpmath.mpf(x)
    return sum(
        (-1) ** k * mpmath.binomial(order, k) * f(x + (order / 2 - k) * step) for k in range(order + 1)
    ) / step**order


def test_criterion_14_wavelet(acceptance_log):
    statuses = {}
    tau_gap = 0.0
    fd_gap = 0.0
    bad = []
    with mpmath.workdps(60):
        for p in (3, 5, 7):
            for m in (1, 2, 3):
                nonsingular = det_bareiss(build_A(p, m)) != 0
                status = check_tau_order(p, m, 1e-8).status
                statuses[(p, m)] = status
                if status != ("holds" if nonsingular else "indeterminate"):
                    bad.append((p, m, status))
                mask = build_R(p, m)
                for xi in np.linspace(-math.pi, math.pi, 13):
                    tau_gap = max(tau_gap, abs(tau_restricted(p, m, xi, mask) - tau_full(p, m, [xi, 0.0], mask)))
                ref = _mp_mask(p, m)
                for xi in (0.3, 1.1, 2 * math.pi / p, -2.0):
                    fd_gap = max(fd_gap, abs(mask.derivative(m, xi) - complex(_central_difference(ref, xi, m))))
    ok = not bad and tau_gap <= 1e-10 and fd_gap <= 1e-6
    held = sum(s == "holds" for s in statuses.values())
    record(acceptance_log, 14, "tau order criterion, tau restriction, D^m R", ok,
           f"{held} holds / {len(statuses) - held} singular; tau gap {tau_gap:.1e}; "
           f"finite-difference gap {fd_gap:.1e}; failures {bad}")
