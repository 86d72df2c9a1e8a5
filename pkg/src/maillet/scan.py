"""Grid scan of det A_{p,m} over (p, m), looking for singular cases with m >= 2."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Iterator

from .exact_linalg import det_bareiss, det_modular_crt
from .matrices import build_A
from .spectral import det_spectral_exact
from .zmod import is_prime, smallest_primitive_root

CSV_FIELDS = (
    "p",
    "m",
    "det_is_zero",
    "det_digits",
    "mod4_ok",
    "modp_ok",
    "methods_agree",
    "primitive_used",
    "elapsed_ms",
)


@dataclass(frozen=True)
class ScanRecord:
    p: int
    m: int
    det_is_zero: bool
    det_digits: int
    mod4_ok: bool
    modp_ok: bool
    methods_agree: bool
    primitive_used: int
    elapsed_ms: int

    @property
    def is_counterexample(self) -> bool:
        return self.det_is_zero and self.m >= 2


assert tuple(f.name for f in fields(ScanRecord)) == CSV_FIELDS


def odd_primes(p_min: int, p_max: int) -> list[int]:
    return [n for n in range(max(3, p_min), p_max + 1) if is_prime(n)]


def scan_cell(p: int, m: int, timing: bool = False) -> ScanRecord:
    """Determinant of A_{p,m} by all three exact methods.

    ``mod4_ok`` is vacuously true for p = 3, where det = 1 - 4^m is odd.
    ``elapsed_ms`` is 0 unless ``timing`` is set, which keeps output reproducible.
    """
    start = time.perf_counter()
    h = smallest_primitive_root(p)
    a = build_A(p, m)
    dets = (det_bareiss(a), det_modular_crt(a), det_spectral_exact(p, m, h))
    det = dets[0]
    elapsed = round((time.perf_counter() - start) * 1000) if timing else 0
    return ScanRecord(
        p=p,
        m=m,
        det_is_zero=det == 0,
        det_digits=len(str(abs(det))),
        mod4_ok=p < 5 or det % 4 == 0,
        modp_ok=det % p == 0,
        methods_agree=len(set(dets)) == 1,
        primitive_used=h.h,
        elapsed_ms=elapsed,
    )


def _scan_cell_args(args: tuple[int, int, bool]) -> ScanRecord:
    return scan_cell(*args)


def run_scan(
    p_max: int, m_min: int, m_max: int, jobs: int = 1, p_min: int = 3, timing: bool = False
) -> Iterator[ScanRecord]:
    """Yield one record per cell, sorted by p then m regardless of ``jobs``."""
    if m_min < 1 or m_max < m_min:
        raise ValueError(f"bad m range [{m_min}, {m_max}]")
    if p_max < 3 or p_min > p_max:
        raise ValueError(f"bad p range [{p_min}, {p_max}]")
    cells = [(p, m, timing) for p in odd_primes(p_min, p_max) for m in range(m_min, m_max + 1)]
    if jobs <= 1:
        yield from map(_scan_cell_args, cells)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map() preserves submission order
        yield from pool.map(_scan_cell_args, cells)


def _fmt(value) -> str:
    return str(value).lower() if isinstance(value, bool) else str(value)


def csv_header() -> str:
    return ",".join(CSV_FIELDS)


def to_csv_row(record: ScanRecord) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow(_fmt(getattr(record, f)) for f in CSV_FIELDS)
    return buf.getvalue()


def to_jsonl_row(record: ScanRecord) -> str:
    return json.dumps(asdict(record), separators=(",", ":"))


def format_records(records: Iterable[ScanRecord], out: str = "csv") -> Iterator[str]:
    if out == "csv":
        yield csv_header()
        yield from map(to_csv_row, records)
    elif out == "jsonl":
        yield from map(to_jsonl_row, records)
    else:
        raise ValueError(f"unknown output format {out!r}")
