"""The divisor-counting function f(n), the 4-rank it determines for generic
n, and the identities that cross-check it.

For odd squarefree n >= 3, f(n) is one quarter of the number of Gaussian
divisors beta of n with beta == +-1 mod 4 such that n/beta is a square
modulo every prime of beta and beta is a square modulo every prime of
n/beta.  It is always a power of 2, and for generic n it equals
2**rk4 of the class group of Q(i, sqrt(n)).

Three independent routes to the same number live here:

* ``f_direct``   - the counting definition over unit * subset-of-primes;
* ``f_char``     - the character-sum expansion over factorizations
  n = b0*b1*b2*b3 in Z[i];
* ``criterion_hilbert`` - the tame-Hilbert-symbol predicate on genus
  elements, with f(n) = (number passing) / 2 for generic n.

The direct route is the production path.  Its per-prime symbol data is
computed through rational Legendre reductions (a split prime pi with
pi * conj(pi) = p gives Z[i]/pi = F_p with i mapped to a square root of -1;
an inert prime q reduces to the Legendre symbol of the norm), which the
test suite checks against the Euler-criterion symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iterproduct

from .gaussint import (
    GaussInt,
    ONE,
    Unit,
    divides,
    exact_div,
    primary_associate,
)
from .genus import SquarefreeProfile, profile
from .gfactor import (
    SpfSieve,
    gauss_factorize,
    jacobi,
    odd_squarefree_primes,
    split_prime,
)
from .gsymbol import FactoredModulus, symbol_prime, tame_hilbert


@dataclass(frozen=True, slots=True)
class FourRankRecord:
    """f(n) together with the rank information it carries.

    The exceptional flag marks n with omega3 >= 1 whose f reaches 2**omega3
    (equivalently rk4 >= omega3 in the generic case); integers without a
    prime divisor 3 mod 4 meet the bound trivially and are not flagged.
    """

    n: int
    profile: SquarefreeProfile
    f: int
    rk4: int | None
    exceptional: bool


@dataclass(frozen=True, slots=True)
class DecompositionSet:
    """Canonical data of a factorization n = b0*b1*b2*b3 in Z[i].

    eta are units, b positive integers (the full rational content of each
    factor), and z[k][l] primary primitive Gaussian integers with
    z[l][k] = conj(z[k][l]); each factor is eta_k * b_k * prod(z[k][l]).
    """

    eta: tuple[Unit, Unit, Unit, Unit]
    b: tuple[int, int, int, int]
    z: tuple[tuple[GaussInt, ...], ...]


# ---------------------------------------------------------------------------
# per-prime data for the fast symbol table
# ---------------------------------------------------------------------------

# p -> (x, y, s, cbit) where x+yi is the primary prime above p derived from
# split_prime(p), s is the image of i in Z[i]/(x+yi) = F_p, and cbit records
# the class of x+yi mod 4 (0 for 1, 1 for 3+2i).  Reads and idempotent
# concurrent inserts are safe.
_SPLIT_DATA: dict[int, tuple[int, int, int, int]] = {}


def _split_data(p: int) -> tuple[int, int, int, int]:
    d = _SPLIT_DATA.get(p)
    if d is None:
        prim = primary_associate(split_prime(p))[1]
        x, y = prim.re, prim.im
        s = (-x * pow(y, -1, p)) % p
        cbit = 0 if (x % 4, y % 4) == (1, 0) else 1
        d = (x, y, s, cbit)
        _SPLIT_DATA[p] = d
    return d


def _entries(primes: list[int]) -> list[tuple[int, int, int, int | None, int]]:
    """Canonical primary-prime entries (x, y, p, s, cbit) for sorted primes.

    Inert q contributes one entry with s = None; split p contributes the
    primary above split_prime(p) and then its conjugate.
    """
    ents: list[tuple[int, int, int, int | None, int]] = []
    for p in primes:
        if p % 4 == 3:
            ents.append((-p, 0, p, None, 0))
        else:
            x, y, s, cbit = _split_data(p)
            ents.append((x, y, p, s, cbit))
            ents.append((x, -y, p, p - s, cbit))
    return ents


def _symbol_rows(ents) -> tuple[list[int], int]:
    """Pairwise symbol bits: rows[j] has bit l set iff [pi_l / pi_j] = -1.

    Also returns the mask of entries whose primary class mod 4 is 3+2i
    (equivalently whose norm is 5 mod 8).
    """
    t = len(ents)
    rows = [0] * t
    cmask = 0
    for j in range(t):
        xj, yj, pj, sj, cbj = ents[j]
        if cbj:
            cmask |= 1 << j
        row = 0
        if sj is None:
            # inert modulus: symbol of alpha is Legendre of its norm mod q
            for l in range(t):
                if l == j:
                    continue
                xl, yl, pl, sl, _ = ents[l]
                nl = pl if sl is not None else pl * pl
                if jacobi(nl, pj) == -1:
                    row |= 1 << l
        else:
            # split modulus: reduce the numerator through i -> s in F_p
            for l in range(t):
                if l == j:
                    continue
                xl, yl, pl, sl, _ = ents[l]
                if jacobi((xl + yl * sj) % pj, pj) == -1:
                    row |= 1 << l
        rows[j] = row
    return rows, cmask


def _pm1_unit_count(parity: int) -> int:
    # number of units u with u * (primary product) == +-1 mod 4, where the
    # product's class is 1 (parity 0) or 3+2i (parity 1)
    base = (1, 0) if parity == 0 else (3, 2)
    count = 0
    for u in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        cls = (
            (u[0] * base[0] - u[1] * base[1]) % 4,
            (u[0] * base[1] + u[1] * base[0]) % 4,
        )
        count += cls in ((1, 0), (3, 0))
    return count


_UNITS_PM1 = (_pm1_unit_count(0), _pm1_unit_count(1))


def _f_from_primes(primes: list[int]) -> int:
    """f(n) for the sorted rational primes of an odd squarefree n >= 3."""
    ents = _entries(primes)
    rows, cmask = _symbol_rows(ents)
    t = len(ents)
    full = (1 << t) - 1
    count = 0
    for sub in range(1 << t):
        units = _UNITS_PM1[(cmask & sub).bit_count() & 1]
        if not units:
            continue
        comp = full ^ sub
        ok = True
        bits = sub
        while bits:
            j = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            if (rows[j] & comp).bit_count() & 1:
                ok = False
                break
        if ok:
            bits = comp
            while bits:
                j = (bits & -bits).bit_length() - 1
                bits &= bits - 1
                if (rows[j] & sub).bit_count() & 1:
                    ok = False
                    break
        if ok:
            count += units
    if count % 4:
        raise AssertionError(f"divisor count {count} not divisible by 4")
    f = count // 4
    if f & (f - 1):
        raise AssertionError(f"f = {f} is not a power of 2")
    return f


def f_direct(n: int, sieve: SpfSieve | None = None) -> int:
    """f(n) by direct enumeration of qualifying divisors.

    Divisors are walked as unit * subset of the primary primes of n; the
    +-1 mod 4 filter is applied first (it forces the unit to be +-1 and the
    subset to carry an even number of primes of norm 5 mod 8), then the
    two-sided residue conditions are tested via the pairwise symbol table.
    """
    if n < 3:
        raise ValueError("f requires an odd squarefree n >= 3")
    return _f_from_primes(odd_squarefree_primes(n, sieve))


def f_char(n: int, sieve: SpfSieve | None = None) -> int:
    """f(n) by the character-sum expansion, in exact integer arithmetic.

    Sums the product [b0*b1 / b3] * [b2*b3 / b1] over all factorizations
    n = b0*b1*b2*b3 in Z[i] with b0*b1 == +-1 mod 4 and b1, b3 primary,
    weighted by 2**-(number of Gaussian primes of each factor); the total
    carries the constant denominator 4 * 2**t, and the division must be
    exact.  Cost grows as 4**t, so this is an oracle for moderate n, not a
    sweep path.
    """
    if n < 3:
        raise ValueError("f requires an odd squarefree n >= 3")
    primes = odd_squarefree_primes(n, sieve)
    ents = _entries(primes)
    rows, cmask = _symbol_rows(ents)
    t = len(ents)
    total = 0
    for code in range(4**t):
        m = [0, 0, 0, 0]
        c = code
        for j in range(t):
            m[c & 3] |= 1 << j
            c >>= 2
        # b1 and b3 are the primary subset products; the unit of b0 must be
        # +-1 for b0*b1 to land in +-1 mod 4, which also needs even weight
        # on the norm-5-mod-8 primes of b0*b1.  Two unit choices survive.
        if ((m[0] | m[1]) & cmask).bit_count() & 1:
            continue
        sign = 0
        num03 = m[0] | m[1]
        bits = m[3]
        while bits:
            j = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            sign ^= (rows[j] & num03).bit_count() & 1
        num21 = m[2] | m[3]
        bits = m[1]
        while bits:
            j = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            sign ^= (rows[j] & num21).bit_count() & 1
        total += -2 if sign else 2
    denom = 4 << t
    if total <= 0 or total % denom:
        raise AssertionError(f"character sum {total} not divisible by {denom}")
    return total // denom


def detect_indicator(beta: FactoredModulus, m: GaussInt) -> int:
    """Indicator that m is a square modulo every prime of beta.

    Averages the symbols [m / b1] over the primary divisors b1 of beta
    (one per subset of its primes); the average is exactly 0 or 1 for m
    coprime to beta.
    """
    vals = [symbol_prime(m, pi) for pi in beta.primes]
    t = len(vals)
    total = 0
    for sub in range(1 << t):
        term = 1
        bits = sub
        while bits:
            j = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            term *= vals[j]
        total += term
    if total % (1 << t):
        raise AssertionError(f"indicator sum {total} not divisible by 2**{t}")
    out = total >> t
    if out not in (0, 1):
        raise AssertionError(f"indicator value {out} outside {{0, 1}}")
    return out


def rank4_generic(n: int, sieve: SpfSieve | None = None) -> FourRankRecord:
    """f(n) packaged with the 4-rank (generic n only) and exception flag."""
    pr = profile(n, sieve)
    f = _f_from_primes(odd_squarefree_primes(n, sieve)) if n >= 3 else 1
    rk4 = f.bit_length() - 1 if pr.generic else None
    exceptional = pr.omega3 >= 1 and f >= 1 << pr.omega3
    return FourRankRecord(n, pr, f, rk4, exceptional)


def residue_criterion(n: int, alpha: GaussInt, sieve: SpfSieve | None = None) -> bool:
    """The unfolded two-sided residue condition on a divisor alpha of n.

    True iff n/alpha is a square modulo every prime of alpha and alpha is a
    square modulo every prime of n/alpha (Euler-criterion symbols).
    """
    fac = gauss_factorize(n, sieve)
    if not divides(alpha, GaussInt(n, 0)):
        raise ValueError(f"{alpha} does not divide {n}")
    coalpha = exact_div(GaussInt(n, 0), alpha)
    for entry in fac.parts:
        pi = entry.primary
        if divides(pi, alpha):
            if symbol_prime(coalpha, pi) != 1:
                return False
        elif symbol_prime(alpha, pi) != 1:
            return False
    return True


def criterion_hilbert(n: int, alpha: GaussInt, sieve: SpfSieve | None = None) -> bool:
    """True iff the tame Hilbert symbol (alpha, n/alpha) is +1 at every
    prime of n.

    Cross-check path for the residue conditions; for generic n the passing
    genus elements number exactly 2 * f(n).
    """
    fac = gauss_factorize(n, sieve)
    if not divides(alpha, GaussInt(n, 0)):
        raise ValueError(f"{alpha} does not divide {n}")
    coalpha = exact_div(GaussInt(n, 0), alpha)
    return all(tame_hilbert(alpha, coalpha, e.primary) == 1 for e in fac.parts)


def nu(n: int, sieve: SpfSieve | None = None) -> int:
    """Number of ways n = b0*b1*b2*b3 with signed integers, b1 == b3 == 1 mod 4.

    Counted by direct enumeration (slot assignment of each prime, then all
    sixteen sign patterns); equals 2 * 4**omega(n) for odd squarefree n.
    """
    primes = odd_squarefree_primes(n, sieve)
    total = 0
    for slots in _iterproduct(range(4), repeat=len(primes)):
        d = [1, 1, 1, 1]
        for p, k in zip(primes, slots):
            d[k] *= p
        for signs in _iterproduct((1, -1), repeat=4):
            if signs[0] * signs[1] * signs[2] * signs[3] != 1:
                continue
            if (signs[1] * d[1]) % 4 == 1 and (signs[3] * d[3]) % 4 == 1:
                total += 1
    return total


def decompose(
    beta0: GaussInt,
    beta1: GaussInt,
    beta2: GaussInt,
    beta3: GaussInt,
    sieve: SpfSieve | None = None,
) -> DecompositionSet:
    """Unique canonical decomposition of a factorization n = b0*b1*b2*b3.

    Each rational prime of n sits in exactly one place: an inert prime, or a
    split pair landing in one factor, joins that factor's rational content
    b_k; a split prime whose halves land in different factors k and l
    becomes the primary z[k][l] (and conjugate z[l][k]).  The residual units
    eta_k multiply to 1, and each beta_k / b_k is primitive.
    """
    betas = (beta0, beta1, beta2, beta3)
    prod = ONE
    for b in betas:
        prod = prod * b
    if prod.im != 0 or prod.re < 1:
        raise ValueError("product of the four factors must be a positive integer")
    n = prod.re
    primes = odd_squarefree_primes(n, sieve)
    b = [1, 1, 1, 1]
    z = [[ONE] * 4 for _ in range(4)]

    def holder(pi: GaussInt) -> int:
        ks = [k for k in range(4) if divides(pi, betas[k])]
        if len(ks) != 1:
            raise AssertionError(f"{pi} divides {len(ks)} factors")
        return ks[0]

    for p in primes:
        if p % 4 == 3:
            b[holder(GaussInt(p, 0))] *= p
        else:
            pi = primary_associate(split_prime(p))[1]
            k = holder(pi)
            l = holder(pi.conjugate())
            if k == l:
                b[k] *= p
            else:
                z[k][l] = z[k][l] * pi
                z[l][k] = z[l][k] * pi.conjugate()
    eta = []
    for k in range(4):
        rest = GaussInt(b[k], 0)
        for l in range(4):
            rest = rest * z[k][l]
        eta.append(Unit.from_value(exact_div(betas[k], rest)))
    return DecompositionSet(tuple(eta), tuple(b), tuple(tuple(row) for row in z))
