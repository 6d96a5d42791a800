"""Exact arithmetic in the ring of Gaussian integers Z[i].

Values are immutable pairs of Python integers, so every operation here is
exact at any size.  The two conventions that everything downstream relies on:

* ``divrem`` rounds each coordinate of the exact quotient to a nearest
  integer with half-values going toward minus infinity, which makes the
  Euclidean remainder satisfy ``norm(r) <= norm(b) / 2`` and keeps gcd
  normalization deterministic.
* An odd element has exactly one associate congruent to 1 modulo 2(1+i);
  that associate is called primary and is the canonical representative used
  by the residue-symbol machinery.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class GaussInt:
    """Gaussian integer ``re + im*i``."""

    re: int
    im: int

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussInt(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __str__(self):
        return format_gauss(self)


def _coerce(x) -> GaussInt | None:
    if isinstance(x, GaussInt):
        return x
    if isinstance(x, int):
        return GaussInt(x, 0)
    return None


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
IMAG = GaussInt(0, 1)

#: The four units of Z[i], indexed by the power of i they represent.
UNIT_VALUES = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))


@dataclass(frozen=True, slots=True)
class Unit:
    """A unit i**k of Z[i]; multiplication adds exponents mod 4."""

    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    def value(self) -> GaussInt:
        return UNIT_VALUES[self.k]

    def __mul__(self, other: "Unit") -> "Unit":
        return Unit(self.k + other.k)

    def inverse(self) -> "Unit":
        return Unit(-self.k)

    @classmethod
    def from_value(cls, z: GaussInt) -> "Unit":
        for k, v in enumerate(UNIT_VALUES):
            if z == v:
                return cls(k)
        raise ValueError(f"{z} is not a unit of Z[i]")


@dataclass(frozen=True, slots=True)
class Mod4Class:
    """Residue class of a Gaussian integer modulo 4Z[i]."""

    re4: int
    im4: int


def norm(z: GaussInt) -> int:
    """Field norm re**2 + im**2; zero exactly for z = 0."""
    return z.re * z.re + z.im * z.im


def _round_half_down(x: int, d: int) -> int:
    # nearest integer to x/d with ties toward -infinity; d > 0
    return -((d - 2 * x) // (2 * d))


def divrem(a, b) -> tuple[GaussInt, GaussInt]:
    """Division with remainder: a = q*b + r with norm(r) <= norm(b)/2.

    Each coordinate of the exact quotient a/b is rounded to a nearest
    integer, ties toward -infinity, so the result is deterministic.
    """
    a, b = _coerce(a), _coerce(b)
    if b is None or a is None:
        raise TypeError("divrem expects Gaussian integers")
    nb = norm(b)
    if nb == 0:
        raise ValueError("division by zero in Z[i]")
    num = a * b.conjugate()
    q = GaussInt(_round_half_down(num.re, nb), _round_half_down(num.im, nb))
    return q, a - q * b


def divides(d: GaussInt, z: GaussInt) -> bool:
    return divrem(z, d)[1] == ZERO


def exact_div(z: GaussInt, d: GaussInt) -> GaussInt:
    q, r = divrem(z, d)
    if r != ZERO:
        raise ValueError(f"{d} does not divide {z} in Z[i]")
    return q


def is_odd(z: GaussInt) -> bool:
    """True iff norm(z) is odd, i.e. 1+i does not divide z."""
    return (z.re + z.im) % 2 == 1


_TWO_ONE_PLUS_I = GaussInt(2, 2)


def is_primary(z: GaussInt) -> bool:
    """True iff z is odd and z == 1 mod 2(1+i)."""
    return is_odd(z) and divides(_TWO_ONE_PLUS_I, z - ONE)


def primary_associate(z) -> tuple[Unit, GaussInt]:
    """The unique primary associate of an odd z, as (u, p) with p = u*z."""
    z = _coerce(z)
    if z is None or z == ZERO or not is_odd(z):
        raise ValueError("primary_associate requires a nonzero odd Gaussian integer")
    for k in range(4):
        p = UNIT_VALUES[k] * z
        if is_primary(p):
            return Unit(k), p
    raise AssertionError(f"no primary associate found for {z}")


def gcd(a, b) -> GaussInt:
    """Greatest common divisor, canonically normalized.

    Odd results are normalized to their primary associate; even results to
    the associate with re > 0 and im >= 0.
    """
    a, b = _coerce(a), _coerce(b)
    if a == ZERO and b == ZERO:
        raise ValueError("gcd(0, 0) is undefined")
    while b != ZERO:
        a, b = b, divrem(a, b)[1]
    if is_odd(a):
        return primary_associate(a)[1]
    while not (a.re > 0 and a.im >= 0):
        a = IMAG * a
    return a


def is_primitive(z: GaussInt) -> bool:
    """True iff the rational integers re and im are coprime."""
    return math.gcd(z.re, z.im) == 1


def mod4(z: GaussInt) -> Mod4Class:
    return Mod4Class(z.re % 4, z.im % 4)


def is_pm1_mod4(z: GaussInt) -> bool:
    """True iff z == 1 or z == -1 modulo 4Z[i]."""
    return z.im % 4 == 0 and z.re % 4 in (1, 3)


_RE_REAL = _re.compile(r"[+-]?\d+")
_RE_IMAG = _re.compile(r"([+-]?)(\d*)i")
_RE_BOTH = _re.compile(r"([+-]?\d+)([+-])(\d*)i")


def parse_gauss(text: str) -> GaussInt:
    """Parse "a+bi" / "a-bi" / "a" / "bi" (no spaces; bare "i" means 1i)."""
    if _RE_REAL.fullmatch(text):
        return GaussInt(int(text), 0)
    m = _RE_IMAG.fullmatch(text)
    if m:
        mag = int(m.group(2)) if m.group(2) else 1
        return GaussInt(0, -mag if m.group(1) == "-" else mag)
    m = _RE_BOTH.fullmatch(text)
    if m:
        mag = int(m.group(3)) if m.group(3) else 1
        return GaussInt(int(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise ValueError(f"cannot parse Gaussian integer from {text!r}")


def format_gauss(z: GaussInt) -> str:
    """Inverse of parse_gauss; round-trips every value."""
    if z.im == 0:
        return str(z.re)
    mag = abs(z.im)
    tail = "i" if mag == 1 else f"{mag}i"
    if z.re == 0:
        return ("-" if z.im < 0 else "") + tail
    return f"{z.re}{'-' if z.im < 0 else '+'}{tail}"
