"""Quadratic residue symbols on odd Gaussian moduli, and the tame Hilbert
symbol at odd places of Q(i).

The prime symbol is the Euler power: for an odd irreducible pi and any
alpha, ``alpha ** ((N(pi)-1)//2)`` is congruent mod pi to 0, +1 or -1, and
that value is the symbol.  Composite moduli must arrive factored; all the
call sites in this package know their factorizations, so no general
unfactored-modulus algorithm is needed (and none is attempted for the even
prime 1+i).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gfactor
from .gaussint import (
    GaussInt,
    ONE,
    Unit,
    ZERO,
    divides,
    divrem,
    gcd as gauss_gcd,
    is_odd,
    is_primary,
    norm,
)

#: Symbol values are plain ints in {-1, 0, +1}.
SymbolValue = int


@dataclass(frozen=True, slots=True)
class FactoredModulus:
    """An odd modulus presented as unit * product of distinct primary primes."""

    unit: Unit
    primes: tuple[GaussInt, ...]

    def value(self) -> GaussInt:
        v = self.unit.value()
        for p in self.primes:
            v = v * p
        return v

    def conjugate(self) -> "FactoredModulus":
        return FactoredModulus(self.unit.inverse(), tuple(p.conjugate() for p in self.primes))


def factor_modulus(z: GaussInt, sieve=None) -> FactoredModulus:
    """Factor an odd squarefree z into a FactoredModulus."""
    unit, primes = gfactor.gauss_prime_parts(z, sieve)
    return FactoredModulus(unit, primes)


def symbol_prime(alpha: GaussInt, pi: GaussInt) -> SymbolValue:
    """Quadratic residue symbol of alpha modulo the odd prime pi.

    Euler's criterion, computed left-to-right by square and multiply with a
    divrem reduction after every product.  Returns 0 iff pi divides alpha,
    +1 iff alpha is a nonzero square mod pi, else -1.  The primality and
    oddness of pi are only checked under assertions; hot callers are trusted.
    """
    assert is_odd(pi) and gfactor.is_gauss_prime(pi), f"bad modulus {pi}"
    base = divrem(alpha, pi)[1]
    if base == ZERO:
        return 0
    acc = ONE
    e = (norm(pi) - 1) // 2
    for bit in bin(e)[2:]:
        acc = divrem(acc * acc, pi)[1]
        if bit == "1":
            acc = divrem(acc * base, pi)[1]
    if divides(pi, acc - ONE):
        return 1
    if divides(pi, acc + ONE):
        return -1
    raise AssertionError(f"Euler power of {alpha} mod {pi} is not 0 or +-1")


def symbol(alpha: GaussInt, beta: FactoredModulus) -> SymbolValue:
    """Symbol extended multiplicatively over the primes of beta.

    The unit part of the modulus is irrelevant and ignored.
    """
    out = 1
    for pi in beta.primes:
        s = symbol_prime(alpha, pi)
        if s == 0:
            return 0
        out *= s
    return out


def _valuation_unit(z: GaussInt, pi: GaussInt) -> tuple[int, GaussInt]:
    # v_pi(z) and the pi-free part of z; z nonzero
    v = 0
    while True:
        q, r = divrem(z, pi)
        if r != ZERO:
            return v, z
        z = q
        v += 1


def tame_hilbert(a: GaussInt, b: GaussInt, pi: GaussInt) -> SymbolValue:
    """Local quadratic Hilbert symbol (a, b) at the odd place pi.

    With m = v_pi(a) and k = v_pi(b), the symbol equals the residue symbol
    of the pi-unit (-1)**(m*k) * a**k / b**m, which reduces to a product of
    prime symbols of the pi-free parts of a and b.
    """
    if a == ZERO or b == ZERO:
        raise ValueError("tame Hilbert symbol requires nonzero arguments")
    m, a1 = _valuation_unit(a, pi)
    k, b1 = _valuation_unit(b, pi)
    out = symbol_prime(GaussInt(-1, 0), pi) ** (m * k % 2)
    if k % 2:
        out *= symbol_prime(a1, pi)
    if m % 2:
        out *= symbol_prime(b1, pi)
    return out


def verify_reciprocity(alpha: GaussInt, beta: GaussInt, sieve=None) -> bool:
    """Check the reciprocity law symbol(alpha, beta) == symbol(beta, alpha).

    Test oracle for coprime primary pairs (primary elements have odd real
    parts); factors both arguments internally.  Always true when the
    implementation is correct.
    """
    if not (is_primary(alpha) and is_primary(beta)):
        raise ValueError("reciprocity check requires primary arguments")
    if norm(gauss_gcd(alpha, beta)) != 1:
        raise ValueError("reciprocity check requires coprime arguments")
    return symbol(alpha, factor_modulus(beta, sieve)) == symbol(
        beta, factor_modulus(alpha, sieve)
    )
