"""Named, machine-checkable verdicts for the structural and spectral facts about A_{p,m}.

Every check carries a stable ``check_id``; README.md maps each id to the
statement it certifies.  Functions accept an optional ``matrix`` override so
the verifier itself can be mutation-tested against crafted counter-matrices.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, NamedTuple, Sequence

from .exact_linalg import (
    ExactMatrix,
    det_bareiss,
    det_modular_crt,
    is_centrosymmetric,
    is_normal,
    is_strictly_diagonally_dominant,
    latin_square_violation,
    matmul,
)
from .matrices import (
    NotCentrosymmetricError,
    build_A,
    build_A_c,
    centro_blocks,
    centro_similar_form,
    circulant,
    kernel_block_vectors,
    power_entries,
    q_polynomial,
    shift_generator_Q,
    similarity_permutation,
    to_circulant,
)
from .spectral import (
    det_spectral_exact,
    eigen_residual,
    eigenvector,
    exact_zero_eigenvalues,
    symmetry_defect,
)
from .zmod import OddPrime, PrimitiveRoot, as_prime, euler_phi, find_primitive_roots, primitive_root

WITNESS_LIMIT = 512
DEFAULT_TOL = 1e-9
SYMMETRY_TOL = 1e-10
DEFAULT_SEED = 20130513


def default_seed() -> int:
    return int(os.environ.get("MAILLET_SEED", DEFAULT_SEED))


def _cap(text: str) -> str:
    return text if len(text) <= WITNESS_LIMIT else text[: WITNESS_LIMIT - 3] + "..."


@dataclass
class Check:
    id: str
    passed: bool
    witness: str = ""

    def __post_init__(self):
        self.passed = bool(self.passed)
        self.witness = _cap(self.witness)


@dataclass
class VerificationReport:
    subject: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check_id: str, passed: bool, witness: str = "") -> Check:
        check = Check(check_id, passed, witness)
        self.checks.append(check)
        return check

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def __contains__(self, check_id: str) -> bool:
        return any(c.id == check_id for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: VerificationReport) -> VerificationReport:
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "checks": [asdict(c) for c in self.checks],
            "overall": self.overall,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_text(self) -> str:
        lines = [f"subject: {json.dumps(self.subject)}"]
        for c in self.checks:
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.id}: {c.witness}")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines)


def c_digest(c: Sequence[int]) -> str:
    return hashlib.sha256(",".join(map(str, c)).encode()).hexdigest()[:16]


def random_entry_vector(p: int, rng: random.Random, distinct: bool = True, bound: int = 1000) -> list[int]:
    """Seeded random integer entry vector of length p-1."""
    if distinct:
        return rng.sample(range(-bound, bound + 1), p - 1)
    return [rng.randint(-bound, bound) for _ in range(p - 1)]


def _first_mismatch(a: ExactMatrix, b: ExactMatrix) -> str:
    for i, (ra, rb) in enumerate(zip(a.rows, b.rows), start=1):
        for j, (x, y) in enumerate(zip(ra, rb), start=1):
            if x != y:
                return f"entry ({i},{j}): {x} != {y}"
    return "shapes differ" if a.shape != b.shape else ""


# -- shared checks on A_p[c] -------------------------------------------------


def _latin(report, prefix, a):
    bad = latin_square_violation(a)
    report.add(f"{prefix}.latin", bad is None, bad or "every row and column permutes row 1")


def _centro(report, prefix, a):
    ok = is_centrosymmetric(a)
    witness = "A(i,j) = A(n-i+1,n-j+1) for all i,j"
    if not ok:
        n = a.nrows
        witness = next(
            f"A({i},{j})={a.entry(i, j)} but A({n - i + 1},{n - j + 1})={a.entry(n - i + 1, n - j + 1)}"
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if a.entry(i, j) != a.entry(n - i + 1, n - j + 1)
        )
    report.add(f"{prefix}.centro", ok, witness)


def _diagonals(report, prefix, a, diag_value, anti_value):
    n = a.nrows
    bad = [i for i in range(1, n + 1) if a.entry(i, i) != diag_value]
    report.add(
        f"{prefix}.diag",
        not bad,
        f"A(i,i) = {diag_value}" if not bad else f"A({bad[0]},{bad[0]}) = {a.entry(bad[0], bad[0])} != {diag_value}",
    )
    bad = [i for i in range(1, n + 1) if a.entry(i, n + 1 - i) != anti_value]
    report.add(
        f"{prefix}.antidiag",
        not bad,
        f"A(i,p-i) = {anti_value}"
        if not bad
        else f"A({bad[0]},{n + 1 - bad[0]}) = {a.entry(bad[0], n + 1 - bad[0])} != {anti_value}",
    )


def _circulant(report, prefix, p, c, h, a):
    row = to_circulant(p, c, h)
    conj = similarity_permutation(h).conjugate(a)
    expected = circulant(row)
    ok = conj == expected
    report.add(
        f"{prefix}.circulant",
        ok,
        f"P A P^T = Circ({row[:6]}{'...' if len(row) > 6 else ''}) with h={h.h}"
        if ok
        else f"h={h.h}: {_first_mismatch(conj, expected)}",
    )


def _normal(report, prefix, a):
    ok = is_normal(a)
    report.add(f"{prefix}.normal", ok, "A A^T = A^T A" if ok else _first_mismatch(matmul(a, a.T), matmul(a.T, a)))


def _qpoly(report, prefix, p, c, h, a):
    recon = q_polynomial(p, c, h)
    ok = recon == a
    report.add(f"{prefix}.qpoly", ok, f"A = sum_k c(h^k) Q^k, h={h.h}" if ok else _first_mismatch(recon, a))


def _spectral_checks(report, prefix, p, c, h, a, tol):
    scale = (p - 1) * max(abs(x) for x in c)
    dense = a.to_numpy(complex)
    residuals = {ell: eigen_residual(p, c, h, ell, dense) for ell in range(1, p)}
    worst = max(residuals, key=residuals.get)
    res = residuals[worst]
    report.add(
        f"{prefix}.residual",
        res <= tol * scale,
        f"max |A nu - lambda nu| = {res:.3e} at l={worst}, bound {tol * scale:.3e}",
    )
    defects = {ell: symmetry_defect(p, h, ell) for ell in range(1, p)}
    worst = max(defects, key=defects.get)
    report.add(
        f"{prefix}.symmetry",
        defects[worst] <= SYMMETRY_TOL,
        f"max |J nu_l - (-1)^l nu_l| = {defects[worst]:.3e} at l={worst}",
    )
    half = (p - 1) // 2
    v = eigenvector(p, h, half)
    signs_ok = bool(abs(abs(v.real) - 1).max() < SYMMETRY_TOL and abs(v.imag).max() < SYMMETRY_TOL)
    expect_sym = p % 4 == 1
    report.add(
        f"{prefix}.pm1",
        signs_ok and (half % 2 == 0) == expect_sym and defects[half] <= SYMMETRY_TOL,
        f"nu_{half} has entries in {{1,-1}} and is {'symmetric' if expect_sym else 'skew'} (p mod 4 = {p % 4})",
    )
    det_exact = det_spectral_exact(p, c, h)
    det_b = det_bareiss(a)
    report.add(
        f"{prefix}.det",
        det_exact == det_b,
        f"prod f_c(z_l) = {det_exact}" if det_exact == det_b else f"spectral {det_exact} != bareiss {det_b}",
    )
    return det_b


def _structure_extras(report, prefix, p, c, h):
    """Q-group, transpose under h^-1, and the circulant count over all primitives."""
    q = shift_generator_Q(p, h)
    n = p - 1
    powers = [q.power(k) for k in range(1, n + 1)]
    clash = [
        (k + 1, l + 1)
        for k in range(n)
        for l in range(k + 1, n)
        if any(a == b for a, b in zip(powers[k].images, powers[l].images))
    ]
    identity_ok = powers[-1].images == tuple(range(1, n + 1))
    report.add(
        f"{prefix}.qgroup",
        identity_ok and not clash,
        f"Q^{n} = I and Q^1..Q^{n} have disjoint supports"
        if identity_ok and not clash
        else f"Q^{n} = I: {identity_ok}; powers sharing a nonzero entry: {clash[:3]}",
    )

    hinv = h.inverse()
    row_h = circulant(to_circulant(p, c, h))
    row_hinv = circulant(to_circulant(p, c, hinv))
    ok = row_hinv == row_h.T
    report.add(
        f"{prefix}.transpose",
        ok,
        f"Circ under h^-1={hinv.h} is the transpose of Circ under h={h.h}" if ok else _first_mismatch(row_hinv, row_h.T),
    )

    roots = find_primitive_roots(p)
    rows = {tuple(to_circulant(p, c, g)) for g in roots}
    phi = euler_phi(p - 1)
    report.add(
        f"{prefix}.count",
        len(rows) == phi,
        f"{len(rows)} distinct circulants over primitives {[g.h for g in roots]}, phi(p-1) = {phi}",
    )
    if len(set(c)) == len(c):
        second = {g.h: to_circulant(p, c, g)[1] for g in roots}
        ok = len(set(second.values())) == len(second)
        report.add(f"{prefix}.entry12", ok, f"(1,2) entries by primitive: {second}")


# -- public verifiers --------------------------------------------------------


def verify_basic(p: int | OddPrime, m: int, matrix: ExactMatrix | None = None) -> VerificationReport:
    p = as_prime(p).value
    a = matrix if matrix is not None else build_A(p, m)
    report = VerificationReport({"p": p, "m": m})
    _latin(report, "basic", a)
    _centro(report, "basic", a)
    _diagonals(report, "basic", a, 1, (p - 1) ** m)
    return report


def dominance_hypothesis(p: int, m: int) -> bool:
    """(p-1)^m > sum_{k=1}^{p-2} k^m."""
    return (p - 1) ** m > sum(k**m for k in range(1, p - 1))


def dominance_threshold_met(p: int, m: int) -> bool:
    """m >= log(p-2) / log((p-1)/(p-2)), decided in integers as (p-1)^m >= (p-2)^(m+1)."""
    return (p - 1) ** m >= (p - 2) ** (m + 1)


def verify_det_lemma(p: int | OddPrime, m: int, matrix: ExactMatrix | None = None) -> VerificationReport:
    p = as_prime(p).value
    a = matrix if matrix is not None else build_A(p, m)
    report = VerificationReport({"p": p, "m": m})
    det = det_bareiss(a)
    det_crt = det_modular_crt(a)
    report.add("detinv.agree", det == det_crt, f"bareiss = crt = {det}" if det == det_crt else f"bareiss {det} != crt {det_crt}")

    try:
        dminus, dplus = centro_similar_form(a)
    except NotCentrosymmetricError as exc:
        report.add("detinv.centro_factor", False, str(exc))
    else:
        dm, dp = det_bareiss(dminus), det_bareiss(dplus)
        report.add(
            "detinv.centro_factor",
            dm * dp == det,
            f"det(B-JC) * det(B+JC) = {dm} * {dp}" + ("" if dm * dp == det else f" != {det}"),
        )
        if p >= 5:
            even = [(i, j) for d in (dminus, dplus) for i, r in enumerate(d.rows, 1) for j, x in enumerate(r, 1) if x % 2 == 0]
            report.add("detinv.i_parity", not even, "all entries of B -+ JC are odd" if not even else f"even entry at {even[0]}")
            report.add("detinv.i", det % 4 == 0, f"det mod 4 = {det % 4}")
        if m == 1 and p >= 5:
            off = [(i, j) for i, r in enumerate(dplus.rows, 1) for j, x in enumerate(r, 1) if x != p]
            report.add("detinv.iv_mechanism", not off, f"B + JC is the constant {p} matrix" if not off else f"(B+JC){off[0]} != {p}")

    if p == 3:
        report.add("detinv.ii", det == 1 - 4**m, f"det = {det}, 1 - 4^m = {1 - 4**m}")
    report.add("detinv.iii", det % p == 0, f"det mod {p} = {det % p}")
    if m == 1 and p >= 5:
        report.add("detinv.iv", det == 0, f"det = {det}")

    hyp = dominance_hypothesis(p, m)
    if dominance_threshold_met(p, m):
        report.add("detinv.v_threshold", hyp, f"log threshold met; dominance hypothesis {'holds' if hyp else 'FAILS'}")
    if hyp:
        ja = ExactMatrix(reversed(a.rows))
        dom = is_strictly_diagonally_dominant(ja)
        report.add(
            "detinv.v",
            dom and det != 0,
            f"(p-1)^m > sum k^m; J A strictly diagonally dominant: {dom}; det != 0: {det != 0}",
        )
    report.subject["det"] = str(det)
    return report


def verify_structure(
    p: int | OddPrime, m: int, h: PrimitiveRoot | int | None = None, matrix: ExactMatrix | None = None
) -> VerificationReport:
    p = as_prime(p).value
    h = h if isinstance(h, PrimitiveRoot) else primitive_root(p, h)
    a = matrix if matrix is not None else build_A(p, m)
    c = power_entries(p, m)
    report = VerificationReport({"p": p, "m": m, "h": h.h})
    _circulant(report, "struct", p, c, h, a)
    _normal(report, "struct", a)
    _qpoly(report, "struct", p, c, h, a)
    _structure_extras(report, "struct", p, c, h)
    return report


def verify_spectrum(
    p: int | OddPrime,
    m: int,
    h: PrimitiveRoot | int | None = None,
    tol: float = DEFAULT_TOL,
    matrix: ExactMatrix | None = None,
) -> VerificationReport:
    p = as_prime(p).value
    h = h if isinstance(h, PrimitiveRoot) else primitive_root(p, h)
    a = matrix if matrix is not None else build_A(p, m)
    c = power_entries(p, m)
    report = VerificationReport({"p": p, "m": m, "h": h.h, "tol": tol})
    det = _spectral_checks(report, "spec", p, c, h, a, tol)
    zeros = sorted(exact_zero_eigenvalues(p, c, h))
    report.subject["zero_eigenvalues"] = zeros
    if m == 1 and p >= 5:
        expected = [ell for ell in range(2, p - 1, 2)]
        report.add(
            "spec.mone",
            all(ell in zeros for ell in expected) and (p - 1) not in zeros,
            f"exact zeros at l = {zeros}; even l != p-1: {expected}",
        )
        kernel = kernel_block_vectors(p)
        prod = matmul(a, kernel)
        nonzero = [(i, j) for i, r in enumerate(prod.rows, 1) for j, x in enumerate(r, 1) if x]
        report.add(
            "spec.kernel",
            not nonzero,
            f"A [C; JC] = 0 for {kernel.ncols} columns" if not nonzero else f"nonzero at {nonzero[0]}",
        )
    report.subject["det"] = str(det)
    return report


def verify_general(
    p: int | OddPrime,
    c: Sequence[int],
    c2: Sequence[int],
    h: PrimitiveRoot | int | None = None,
    tol: float = DEFAULT_TOL,
    seed: int | None = None,
) -> VerificationReport:
    p = as_prime(p).value
    h = h if isinstance(h, PrimitiveRoot) else primitive_root(p, h)
    c, c2 = list(c), list(c2)
    a = build_A_c(p, c)
    a2 = build_A_c(p, c2)
    subject = {"p": p, "c_digest": c_digest(c), "c2_digest": c_digest(c2), "h": h.h, "tol": tol}
    if seed is not None:
        subject["seed"] = seed
    report = VerificationReport(subject)
    _latin(report, "gen", a)
    _centro(report, "gen", a)
    _diagonals(report, "gen", a, c[0], c[-1])
    _circulant(report, "gen", p, c, h, a)
    _normal(report, "gen", a)
    _qpoly(report, "gen", p, c, h, a)
    det = _spectral_checks(report, "gen", p, c, h, a, tol)

    family = {"A[c]": a, "A[c']": a2, "A[c]^T": a.T, "A[c']^T": a2.T}
    names = list(family)
    bad = [
        (x, y)
        for i, x in enumerate(names)
        for y in names[i + 1 :]
        if matmul(family[x], family[y]) != matmul(family[y], family[x])
    ]
    report.add("gen.commute", not bad, "all pairs commute" if not bad else f"{bad[0][0]} and {bad[0][1]} do not commute")

    zeros = exact_zero_eigenvalues(p, c, h)
    report.add(
        "gen.invertible",
        (det != 0) == (not zeros),
        f"det = {det}; f_c vanishes at l = {sorted(zeros)}",
    )
    report.subject["det"] = str(det)
    return report


class MailletResult(NamedTuple):
    value: int
    divisible_by_p_power: bool
    nonzero: bool


def maillet_determinant(p: int | OddPrime) -> MailletResult:
    """Classical Maillet determinant: det of the leading (p-1)/2 block of A_{p,1}."""
    p = as_prime(p).value
    if p == 3:
        return MailletResult(1, True, True)
    b, _ = centro_blocks(build_A(p, 1))
    value = det_bareiss(b)
    return MailletResult(value, value % p ** ((p - 3) // 2) == 0, value != 0)


def verify_maillet(p: int | OddPrime) -> VerificationReport:
    p = as_prime(p).value
    value, divisible, nonzero = maillet_determinant(p)
    k = (p - 3) // 2
    report = VerificationReport({"p": p, "maillet": str(value)})
    report.add("maillet.nonzero", nonzero, f"det B_p,1 = {value}")
    quotient = value // p**k if divisible else None
    report.add("maillet.divisible", divisible, f"p^{k} divides det; quotient {quotient}")
    return report


def verify_all(
    p: int | OddPrime,
    m: int,
    h: PrimitiveRoot | int | None = None,
    tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Basic, determinant, structural and spectral checks for A_{p,m} in one report."""
    p = as_prime(p).value
    h = h if isinstance(h, PrimitiveRoot) else primitive_root(p, h)
    a = build_A(p, m)
    report = VerificationReport({"p": p, "m": m, "h": h.h, "tol": tol})
    parts: list[Callable[[], VerificationReport]] = [
        lambda: verify_basic(p, m, a),
        lambda: verify_det_lemma(p, m, a),
        lambda: verify_structure(p, m, h, a),
        lambda: verify_spectrum(p, m, h, tol, a),
    ]
    for part in parts:
        sub = part()
        report.extend(sub)
        for key in ("det", "zero_eigenvalues"):
            if key in sub.subject:
                report.subject[key] = sub.subject[key]
    return report
