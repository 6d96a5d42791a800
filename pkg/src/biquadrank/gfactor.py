"""Factorization into primary Gaussian primes, plus the rational helpers
(smallest-prime-factor sieve, deterministic Tonelli-Shanks, Jacobi symbols)
that back the bulk sweeps.

Split primes p == 1 mod 4 are decomposed through a cached square root of -1
modulo p; the representative returned by :func:`split_prime` is pinned to
a == 1 mod 4, b even, b > 0 so that repeated calls and parallel workers agree
bit for bit.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass

from .gaussint import (
    GaussInt,
    Unit,
    ZERO,
    divides,
    exact_div,
    gcd as gauss_gcd,
    is_odd,
    norm,
    primary_associate,
)

KIND_SPLIT_FIRST = "split-first"
KIND_SPLIT_CONJUGATE = "split-conjugate"
KIND_INERT = "inert"


class SpfSieve:
    """Smallest prime factor for every integer in 1..bound.

    Immutable after construction; safe to share read-only across workers.
    """

    __slots__ = ("bound", "_spf")

    def __init__(self, bound: int):
        if bound < 1:
            raise ValueError("sieve bound must be >= 1")
        self.bound = bound
        spf = array("q", bytes(8 * (bound + 1)))
        i = 2
        while i * i <= bound:
            if spf[i] == 0:
                for m in range(i * i, bound + 1, i):
                    if spf[m] == 0:
                        spf[m] = i
            i += 1
        self._spf = spf

    def smallest_factor(self, n: int) -> int:
        """Least prime factor of n (n itself when n is prime); n >= 2."""
        p = self._spf[n]
        return p if p else n

    def factor(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization of 1 <= n <= bound as (prime, exponent) pairs."""
        out = []
        while n > 1:
            p = self.smallest_factor(n)
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out


def factor_rational(n: int, sieve: SpfSieve | None = None) -> list[tuple[int, int]]:
    """Complete factorization of n >= 1, sieve-backed when possible."""
    if n < 1:
        raise ValueError("factor_rational requires n >= 1")
    if sieve is not None and n <= sieve.bound:
        return sieve.factor(n)
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            if n % q == 0:
                e = 0
                while n % q == 0:
                    n //= q
                    e += 1
                out.append((q, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    out.sort()
    return out


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
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


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n > 0, by the binary algorithm."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi modulus must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int:
    """Square root of a modulo the odd prime p via Tonelli-Shanks.

    Deterministic: the auxiliary non-residue is the smallest prime
    non-residue, and the smaller of the two roots is returned.
    Raises ValueError when a is a non-residue.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a square modulo {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    while t != 1:
        i = 1
        t2 = t * t % p
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


_SPLIT_PRIME_CACHE: dict[int, GaussInt] = {}


def split_prime(p: int) -> GaussInt:
    """Decompose a prime p == 1 mod 4 as a+bi with a == 1 mod 4, b even, b > 0.

    Computed once per prime from gcd(p, s+i) where s*s == -1 mod p; cached,
    and the cache is safe under idempotent concurrent inserts because the
    normalization pins a unique representative.
    """
    pi = _SPLIT_PRIME_CACHE.get(p)
    if pi is not None:
        return pi
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"split_prime requires a prime p == 1 mod 4, got {p}")
    s = sqrt_mod(p - 1, p)
    g = gauss_gcd(GaussInt(p, 0), GaussInt(s, 1))
    a, b = g.re, g.im
    if a % 2 == 0:
        a, b = -b, a
    if a % 4 != 1:
        a, b = -a, -b
    if b < 0:
        b = -b
    pi = GaussInt(a, b)
    assert norm(pi) == p
    _SPLIT_PRIME_CACHE[p] = pi
    return pi


def is_gauss_prime(z: GaussInt) -> bool:
    """True iff z is irreducible in Z[i]."""
    nz = norm(z)
    if nz < 2:
        return False
    if is_prime(nz):
        return True
    if z.re != 0 and z.im != 0:
        return False
    q = abs(z.re) if z.im == 0 else abs(z.im)
    return q % 4 == 3 and is_prime(q)


@dataclass(frozen=True, slots=True)
class PrimeEntry:
    """One primary Gaussian prime above a rational prime dividing n."""

    primary: GaussInt
    kind: str
    rational_p: int


@dataclass(frozen=True, slots=True)
class GaussFactorization:
    """Primary Gaussian prime factorization of an odd squarefree n > 0."""

    n: int
    parts: tuple[PrimeEntry, ...]

    def primaries(self) -> tuple[GaussInt, ...]:
        return tuple(e.primary for e in self.parts)


def odd_squarefree_primes(n: int, sieve: SpfSieve | None = None) -> list[int]:
    """Sorted rational primes of n; raises unless n is odd and squarefree."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"expected a positive odd integer, got {n}")
    fac = factor_rational(n, sieve)
    if any(e > 1 for _, e in fac):
        raise ValueError(f"{n} is not squarefree")
    return [p for p, _ in fac]


def gauss_factorize(n: int, sieve: SpfSieve | None = None) -> GaussFactorization:
    """Factor an odd squarefree n > 0 into primary Gaussian primes.

    Entries are ordered by ascending rational prime, with the split
    representative derived from split_prime(p) listed before its conjugate.
    """
    parts: list[PrimeEntry] = []
    for p in odd_squarefree_primes(n, sieve):
        if p % 4 == 3:
            parts.append(PrimeEntry(GaussInt(-p, 0), KIND_INERT, p))
        else:
            first = primary_associate(split_prime(p))[1]
            parts.append(PrimeEntry(first, KIND_SPLIT_FIRST, p))
            parts.append(PrimeEntry(first.conjugate(), KIND_SPLIT_CONJUGATE, p))
    return GaussFactorization(n, tuple(parts))


def gauss_prime_parts(
    z: GaussInt, sieve: SpfSieve | None = None
) -> tuple[Unit, tuple[GaussInt, ...]]:
    """Write an odd z with squarefree Gaussian factorization as unit * primes.

    The primes come back primary, sorted by (norm, re, im).  Raises when z is
    even, zero, or divisible by the square of a prime.
    """
    if z == ZERO or not is_odd(z):
        raise ValueError(f"expected a nonzero odd Gaussian integer, got {z}")
    primes: list[GaussInt] = []
    rest = z
    for p, e in factor_rational(norm(z), sieve):
        if p % 4 == 3:
            if e % 2 or e > 2:
                raise ValueError(f"{z} is divisible by the square of a prime")
            q = GaussInt(-p, 0)
            primes.append(q)
            rest = exact_div(rest, q)
        else:
            pi = primary_associate(split_prime(p))[1]
            for cand in (pi, pi.conjugate()):
                if divides(cand, rest):
                    rest = exact_div(rest, cand)
                    if divides(cand, rest):
                        raise ValueError(f"{z} is divisible by the square of a prime")
                    primes.append(cand)
    primes.sort(key=lambda w: (norm(w), w.re, w.im))
    return Unit.from_value(rest), tuple(primes)
