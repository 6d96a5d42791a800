"""4-rank statistics of class groups of the fields Q(i, sqrt(n)).

For odd squarefree n, the divisor-counting function f(n) over the Gaussian
integers determines the 4-rank of the class group whenever n has a prime
divisor congruent to 5 mod 8 (the generic case).  This package computes
f(n) exactly, the genus-group and Hilbert-symbol cross-checks, and the bulk
statistics of f over ranges of n.
"""

from .gaussint import (
    GaussInt,
    Mod4Class,
    Unit,
    divrem,
    format_gauss,
    gcd,
    is_odd,
    is_pm1_mod4,
    is_primary,
    is_primitive,
    mod4,
    norm,
    parse_gauss,
    primary_associate,
)
from .gfactor import (
    GaussFactorization,
    PrimeEntry,
    SpfSieve,
    factor_rational,
    gauss_factorize,
    is_gauss_prime,
    split_prime,
)
from .genus import GenusElement, SquarefreeProfile, gn_enumerate, profile, rk2
from .gsymbol import (
    FactoredModulus,
    factor_modulus,
    symbol,
    symbol_prime,
    tame_hilbert,
    verify_reciprocity,
)
from .fourrank import (
    DecompositionSet,
    FourRankRecord,
    criterion_hilbert,
    decompose,
    detect_indicator,
    f_char,
    f_direct,
    nu,
    rank4_generic,
    residue_criterion,
)
from .sweep import (
    SweepConfig,
    SweepReport,
    exceptional_scan,
    mt_asymptotic_check,
    mt_count,
    record_minima,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "GaussInt",
    "Mod4Class",
    "Unit",
    "divrem",
    "format_gauss",
    "gcd",
    "is_odd",
    "is_pm1_mod4",
    "is_primary",
    "is_primitive",
    "mod4",
    "norm",
    "parse_gauss",
    "primary_associate",
    "GaussFactorization",
    "PrimeEntry",
    "SpfSieve",
    "factor_rational",
    "gauss_factorize",
    "is_gauss_prime",
    "split_prime",
    "GenusElement",
    "SquarefreeProfile",
    "gn_enumerate",
    "profile",
    "rk2",
    "FactoredModulus",
    "factor_modulus",
    "symbol",
    "symbol_prime",
    "tame_hilbert",
    "verify_reciprocity",
    "DecompositionSet",
    "FourRankRecord",
    "criterion_hilbert",
    "decompose",
    "detect_indicator",
    "f_char",
    "f_direct",
    "nu",
    "rank4_generic",
    "residue_criterion",
    "SweepConfig",
    "SweepReport",
    "exceptional_scan",
    "mt_asymptotic_check",
    "mt_count",
    "record_minima",
    "run_sweep",
]
