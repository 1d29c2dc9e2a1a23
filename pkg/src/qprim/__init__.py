"""Primitive-root streaks of quadratic polynomials.

Exact integer/rational machinery for streak statistics c_g(f), the
character-sum and Euler-product densities that predict them, and a
checkpointed search for record streaks.
"""

__version__ = "0.1.0"

from .arith import (
    Factorization,
    FactorizationError,
    factor,
    is_prime,
    is_primitive_root,
    kronecker,
    multiplicative_order,
    residual_index,
)
from .charsums import (
    FundamentalDiscriminant,
    admissible_discriminants,
    fundamental_discriminant,
    inert_proportion,
)
from .densities import (
    DensityReport,
    LValue,
    dirichlet_l,
    expected_max_streak,
    hardy_littlewood_constant,
    pr_density,
)
from .poly import PolyZ, QuadraticPoly, parse_poly
from .search import SearchConfig, SearchRecord, candidate_poly, sweep
from .streaks import PrimeValueStream, StreakResult, prime_count, streak

__all__ = [
    "Factorization",
    "FactorizationError",
    "FundamentalDiscriminant",
    "DensityReport",
    "LValue",
    "PolyZ",
    "PrimeValueStream",
    "QuadraticPoly",
    "SearchConfig",
    "SearchRecord",
    "StreakResult",
    "admissible_discriminants",
    "candidate_poly",
    "dirichlet_l",
    "expected_max_streak",
    "factor",
    "fundamental_discriminant",
    "hardy_littlewood_constant",
    "inert_proportion",
    "is_prime",
    "is_primitive_root",
    "kronecker",
    "multiplicative_order",
    "parse_poly",
    "pr_density",
    "prime_count",
    "residual_index",
    "streak",
    "sweep",
]
