"""Bulk statistics over odd squarefree n: the main-term count MT(x), the
weighted sum S(x) = sum of f(n) / 2**(omega3(n) - 1), exceptional scans,
and CSV report emission.

S(x) is accumulated exactly as a dyadic rational (integer numerator at a
fixed power-of-two scale), so reports are reproducible bit for bit and
independent of chunking and worker count: chunks cover disjoint ranges and
their partial sums merge associatively in range order.
"""

from __future__ import annotations

import csv
import math
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction

from .fourrank import FourRankRecord, _f_from_primes
from .genus import SquarefreeProfile
from .gfactor import SpfSieve

# scale of the dyadic accumulator; must exceed max omega3(n) - 1, which is
# far below 64 for any feasible sweep bound
_SCALE = 64

RECORDS_HEADER = ["n", "omega1", "omega3", "generic", "f", "rk4", "exceptional"]
REPORT_HEADER = ["x", "mt", "s_num", "s_den", "deviation"]


@dataclass(frozen=True, slots=True)
class SweepCheckpoint:
    x: int
    mt: int
    s: Fraction

    @property
    def deviation(self) -> float:
        return float(self.s - self.mt) / self.x


@dataclass(frozen=True, slots=True)
class SweepConfig:
    x_max: int
    chunk_size: int = 100_000
    worker_count: int = 1
    emit_records: bool = False
    output_path: str | None = None
    checkpoints: tuple[int, ...] = ()

    def __post_init__(self):
        if self.x_max < 1:
            raise ValueError("x_max must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")


@dataclass(frozen=True, slots=True)
class SweepReport:
    x: int
    mt: int
    s: Fraction
    exceptional_by_omega3: dict[int, int]
    records: list[FourRankRecord] | None
    checkpoints: tuple[SweepCheckpoint, ...] = ()

    @property
    def deviation(self) -> float:
        return float(self.s - self.mt) / self.x


def _iter_squarefree_factored(lo: int, hi: int, sieve: SpfSieve):
    """Yield (n, primes) for odd squarefree n in [lo, hi)."""
    start = lo if lo % 2 else lo + 1
    spf = sieve._spf
    for n in range(start, hi, 2):
        m = n
        primes = []
        while m > 1:
            p = spf[m] or m
            m //= p
            if m % p == 0:
                primes = None
                break
            primes.append(p)
        if primes is not None:
            yield n, primes


def make_record(n: int, primes: list[int]) -> FourRankRecord:
    """FourRankRecord from the sorted rational primes of n (f(1) = 1)."""
    omega1 = sum(1 for p in primes if p % 4 == 1)
    omega3 = len(primes) - omega1
    generic = any(p % 8 == 5 for p in primes)
    pr = SquarefreeProfile(n, omega1, omega3, 2 * omega1 + omega3, generic)
    f = _f_from_primes(primes) if n >= 3 else 1
    rk4 = f.bit_length() - 1 if generic else None
    exceptional = omega3 >= 1 and f >= 1 << omega3
    return FourRankRecord(n, pr, f, rk4, exceptional)


# sieve shared with forked workers; set before the pool is created
_WORKER_SIEVE: SpfSieve | None = None


def _chunk_stats(args):
    lo, hi, emit_records = args
    sieve = _WORKER_SIEVE
    mt = 0
    s_num = 0
    buckets: dict[int, int] = {}
    records = [] if emit_records else None
    for n, primes in _iter_squarefree_factored(lo, hi, sieve):
        omega3 = sum(1 for p in primes if p % 4 == 3)
        f = _f_from_primes(primes) if n >= 3 else 1
        mt += 1
        s_num += f << (_SCALE + 1 - omega3)
        if omega3 >= 1 and f >= 1 << omega3 and any(p % 8 == 5 for p in primes):
            buckets[omega3] = buckets.get(omega3, 0) + 1
        if records is not None:
            records.append(make_record(n, primes))
    return mt, s_num, buckets, records


def _chunk_ranges(x_max: int, chunk_size: int, checkpoints: tuple[int, ...]):
    """Disjoint [lo, hi) ranges covering [1, x_max], split at checkpoints."""
    bounds = sorted({c for c in checkpoints if 1 <= c < x_max} | {x_max})
    ranges = []
    lo = 1
    for b in bounds:
        while lo <= b:
            hi = min(lo + chunk_size, b + 1)
            ranges.append((lo, hi))
            lo = hi
    return ranges


def run_sweep(cfg: SweepConfig, sieve: SpfSieve | None = None) -> SweepReport:
    """Sweep all odd squarefree n <= x_max and aggregate the statistics.

    Deterministic for any chunk_size and worker_count.  Checkpoints listed
    in the config produce exact (x, MT(x), S(x)) snapshots along the way.
    """
    global _WORKER_SIEVE
    if sieve is None or sieve.bound < cfg.x_max:
        sieve = SpfSieve(cfg.x_max)
    ranges = _chunk_ranges(cfg.x_max, cfg.chunk_size, cfg.checkpoints)
    args = [(lo, hi, cfg.emit_records) for lo, hi in ranges]
    _WORKER_SIEVE = sieve
    try:
        if cfg.worker_count == 1:
            partials = [_chunk_stats(a) for a in args]
        else:
            with multiprocessing.Pool(cfg.worker_count) as pool:
                partials = pool.map(_chunk_stats, args, chunksize=1)
    finally:
        _WORKER_SIEVE = None

    mt = 0
    s_num = 0
    buckets: dict[int, int] = {}
    records = [] if cfg.emit_records else None
    snapshots = []
    wanted = sorted({c for c in cfg.checkpoints if 1 <= c <= cfg.x_max})
    for (lo, hi), (d_mt, d_s, d_buckets, d_records) in zip(ranges, partials):
        mt += d_mt
        s_num += d_s
        for k, v in d_buckets.items():
            buckets[k] = buckets.get(k, 0) + v
        if records is not None:
            records.extend(d_records)
        while wanted and hi > wanted[0]:
            snapshots.append(
                SweepCheckpoint(wanted[0], mt, Fraction(s_num, 1 << _SCALE))
            )
            wanted.pop(0)
    for c in wanted:
        snapshots.append(SweepCheckpoint(c, mt, Fraction(s_num, 1 << _SCALE)))
    return SweepReport(
        cfg.x_max, mt, Fraction(s_num, 1 << _SCALE), buckets, records, tuple(snapshots)
    )


def iter_records(x: int, sieve: SpfSieve | None = None):
    """Yield FourRankRecord for every odd squarefree n <= x, ascending."""
    if sieve is None or sieve.bound < x:
        sieve = SpfSieve(max(x, 1))
    for n, primes in _iter_squarefree_factored(1, x + 1, sieve):
        yield make_record(n, primes)


def exceptional_scan(x: int, sieve: SpfSieve | None = None) -> list[tuple[int, int, int]]:
    """Generic odd squarefree n <= x with omega3 >= 1 and f >= 2**omega3.

    Returns (n, omega3, rk4) triples sorted by n.
    """
    out = []
    for rec in iter_records(x, sieve):
        if rec.profile.generic and rec.exceptional:
            out.append((rec.n, rec.profile.omega3, rec.rk4))
    return out


def record_minima(x: int, sieve: SpfSieve | None = None) -> tuple[int | None, int | None]:
    """Least generic n <= x with omega3 > 0 and rk4 >= omega3 + 1, resp. + 2."""
    min1 = min2 = None
    for rec in iter_records(x, sieve):
        if not rec.profile.generic or rec.profile.omega3 == 0:
            continue
        if min1 is None and rec.rk4 >= rec.profile.omega3 + 1:
            min1 = rec.n
        if min2 is None and rec.rk4 >= rec.profile.omega3 + 2:
            min2 = rec.n
        if min1 is not None and min2 is not None:
            break
    return min1, min2


def mt_count(x: int) -> int:
    """Exact count of odd squarefree n <= x (a plain squarefree sieve)."""
    if x < 1:
        return 0
    flags = bytearray([1]) * (x + 1)
    for p in range(2, math.isqrt(x) + 1):
        # striking d*d multiples for composite d only re-marks entries, so
        # no primality filter is needed
        for m in range(p * p, x + 1, p * p):
            flags[m] = 0
    return sum(flags[n] for n in range(1, x + 1, 2))


@dataclass(frozen=True, slots=True)
class MtCheck:
    x: int
    count: int
    deviation: float
    bound: float
    passed: bool


def mt_asymptotic_check(x: int) -> MtCheck:
    """Compare MT(x) with 4x/pi**2; the tolerance 5*sqrt(x) is a calibration."""
    count = mt_count(x)
    deviation = abs(count - 4 * x / math.pi**2)
    bound = 5 * math.sqrt(x)
    return MtCheck(x, count, deviation, bound, deviation <= bound)


def write_records_csv(records: list[FourRankRecord], path: str) -> None:
    """Records CSV: ascending n, booleans as 0/1, rk4 empty when absent."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORDS_HEADER)
        for r in records:
            w.writerow(
                [
                    r.n,
                    r.profile.omega1,
                    r.profile.omega3,
                    int(r.profile.generic),
                    r.f,
                    "" if r.rk4 is None else r.rk4,
                    int(r.exceptional),
                ]
            )


def write_report_csv(checkpoints: tuple[SweepCheckpoint, ...], path: str) -> None:
    """Report CSV: one row per checkpoint with exact S as s_num/s_den."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_HEADER)
        for c in checkpoints:
            w.writerow(
                [c.x, c.mt, c.s.numerator, c.s.denominator, repr(c.deviation)]
            )
