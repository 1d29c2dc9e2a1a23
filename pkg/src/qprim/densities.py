"""Euler-product densities and constants.

Covers the truncated products that predict streak behaviour (the quality
density, its simplified form, the uncorrected/corrected split-prime products),
the classical constants (totient-ratio mean, Hardy-Littlewood constants,
Bateman-Horn products), Dirichlet L-values at s = 1, 2, and the
expected-maximum model for a family of geometric streaks.

L-values are evaluated through character-weighted Hurwitz-zeta sums: digamma
for s = 1 (the pole cancels against a non-principal character) and trigamma
for s = 2, both by recurrence plus an Euler-Maclaurin tail whose first
omitted Bernoulli term bounds the remainder.  Naive Dirichlet-series
truncation could never reach 1e-9 at s = 1 for |D| ~ 1e5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import euler_phi, factor, is_prime, iter_primes, kronecker, primes_up_to
from .charsums import FundamentalDiscriminant
from .poly import AnyPoly, as_polyz, count_residue_class, is_perfect_square


@dataclass(frozen=True)
class DensityReport:
    """A truncated Euler product: value, largest prime folded in, and an
    estimate of the absolute truncation error (formula documented at each
    producing operation)."""

    value: float
    cutoff: int
    tail_bound: float
    method: str  # "direct" or "accelerated"


@dataclass(frozen=True)
class LValue:
    s: int
    D: FundamentalDiscriminant
    value: float
    abs_error: float


# ---------------------------------------------------------------------------
# special functions (Euler-Maclaurin with the first omitted term < 1e-21
# at the recurrence threshold 24; double precision dominates the error)
# ---------------------------------------------------------------------------

_BERNOULLI = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
)


def _digamma(x: float) -> float:
    acc = 0.0
    while x < 24.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    val = math.log(x) - 0.5 * inv
    t = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        val -= b * t / (2 * k)
        t *= inv2
    return val + acc


def _trigamma(x: float) -> float:
    acc = 0.0
    while x < 24.0:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    val = inv + 0.5 * inv2
    t = inv * inv2
    for b in _BERNOULLI:
        val += b * t
        t *= inv2
    return val + acc


_prime_cache: list[int] = []
_prime_cache_limit = 0
_PRIME_CACHE_CAP = 2_000_000


def _primes_to(limit: int) -> Iterable[int]:
    global _prime_cache, _prime_cache_limit
    if limit <= _PRIME_CACHE_CAP:
        if limit > _prime_cache_limit:
            _prime_cache = primes_up_to(max(limit, 100_000))
            _prime_cache_limit = max(limit, 100_000)
        for p in _prime_cache:
            if p > limit:
                return
            yield p
        return
    yield from iter_primes(2, limit)


def _coerce_discriminant(D) -> FundamentalDiscriminant:
    if isinstance(D, FundamentalDiscriminant):
        return D
    return FundamentalDiscriminant.from_integer(int(D))


# ---------------------------------------------------------------------------
# Dirichlet L-values
# ---------------------------------------------------------------------------

_L_ERROR_FLOOR = 1e-11


def dirichlet_l(s: int, D, tol: float = 1e-9) -> LValue:
    """L(s, chi_D) for s in {1, 2}, chi_D(n) the Kronecker symbol (D/n).

    s = 1:  -(1/q) * sum_a chi(a) psi(a/q)      (q = |D|)
    s = 2:   (1/q^2) * sum_a chi(a) psi'(a/q)

    The reported abs_error is a rounding envelope; the outer 1/q keeps the
    accumulated term errors from growing with q.
    """
    fd = _coerce_discriminant(D)
    if s not in (1, 2):
        raise ValueError("only s = 1 and s = 2 are supported")
    q = abs(fd.D)
    if q <= 1:
        raise ValueError("need a discriminant with |D| > 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if tol < _L_ERROR_FLOOR:
        raise ValueError(
            f"precision-exceeded: tol={tol} is below the working precision {_L_ERROR_FLOOR}"
        )
    terms = []
    if s == 1:
        for a in range(1, q):
            ch = kronecker(fd.D, a)
            if ch:
                terms.append(ch * _digamma(a / q))
        value = -math.fsum(terms) / q
    else:
        for a in range(1, q):
            ch = kronecker(fd.D, a)
            if ch:
                terms.append(ch * _trigamma(a / q))
        value = math.fsum(terms) / (q * q)
    return LValue(s=s, D=fd, value=value, abs_error=_L_ERROR_FLOOR)


def _split_cutoff(tol: float, power: int) -> int:
    """Smallest power-of-two-ish cutoff Q with the split-product tail
    ~ 2/(Q^power * ln Q) below tol/2."""
    Q = 10_000
    while 2.0 / (float(Q) ** power * math.log(Q)) > tol / 2 and Q < 4_000_000:
        Q *= 2
    return Q


def hardy_littlewood_constant(D: int, tol: float = 1e-8) -> DensityReport:
    """Prime-density constant of an Euler-style quadratic with fundamental
    discriminant D < 0, D = 5 mod 8, via the L-value form

        zeta(4) / (2 L(1,chi) L(2,chi)) * prod_{q | D}(1 - q^-4)
                * prod_{split q >= 3}(1 - 2/(q (q-1)^2)).
    """
    fd = _coerce_discriminant(D)
    if fd.D >= 0 or fd.D % 8 != 5:
        raise ValueError("discriminant must be negative and = 5 (mod 8)")
    L1 = dirichlet_l(1, fd, tol=1e-10)
    L2 = dirichlet_l(2, fd, tol=1e-10)
    value = (math.pi ** 4 / 90.0) / (2.0 * L1.value * L2.value)
    for p, _ in factor(abs(fd.D)).factors:
        value *= 1.0 - 1.0 / float(p) ** 4
    cutoff = _split_cutoff(tol, power=2)
    for q in _primes_to(cutoff):
        if q > 2 and kronecker(fd.D, q) == 1:
            value *= 1.0 - 2.0 / (q * (q - 1.0) ** 2)
    tail = value * 1.0 / (float(cutoff) ** 2 * math.log(cutoff)) + 1e-10
    return DensityReport(value=value, cutoff=cutoff, tail_bound=tail, method="accelerated")


def hl_constant_direct(D: int, cutoff: int = 100_000) -> DensityReport:
    """Defining slow product prod_{q >= 3}(1 - (D/q)/(q-1)), truncated.

    The tail estimate is heuristic (oscillating character sum over primes,
    random-sign model): 3 * value / sqrt(cutoff * ln cutoff).
    """
    value = 1.0
    for q in _primes_to(cutoff):
        if q > 2:
            ch = kronecker(D, q)
            if ch:
                value *= 1.0 - ch / (q - 1.0)
    tail = 3.0 * value / math.sqrt(cutoff * math.log(cutoff))
    return DensityReport(value=value, cutoff=cutoff, tail_bound=tail, method="direct")


def character_euler_product(s: int, D, tol: float = 1e-6) -> DensityReport:
    """prod_{q >= 3}(1 - chi_D(q)/(q^s - 1)) via the L-value identity

        eps(s) * zeta(2s)/L(s,chi) * prod_{q | D}(1 - q^-2s)
               * prod_{split q >= 3}(1 - 2/(q^s (q^s - 1))),

    with eps(s) = 1 + 2^-s (D/2).  The q | D product runs over all prime
    divisors of D including 2.
    """
    fd = _coerce_discriminant(D)
    if s not in (1, 2):
        raise ValueError("only s = 1 and s = 2 are supported")
    eps = 1.0 + kronecker(fd.D, 2) * 2.0 ** -s
    zeta_2s = math.pi ** 2 / 6.0 if s == 1 else math.pi ** 4 / 90.0
    Ls = dirichlet_l(s, fd, tol=1e-10)
    value = eps * zeta_2s / Ls.value
    for p, _ in factor(abs(fd.D)).factors:
        value *= 1.0 - 1.0 / float(p) ** (2 * s)
    cutoff = _split_cutoff(tol, power=s)
    for q in _primes_to(cutoff):
        if q > 2 and kronecker(fd.D, q) == 1:
            qs = float(q) ** s
            value *= 1.0 - 2.0 / (qs * (qs - 1.0))
    tail = value * 2.0 / (float(cutoff) ** s * math.log(cutoff)) + 1e-10
    return DensityReport(value=value, cutoff=cutoff, tail_bound=tail, method="accelerated")


def character_euler_product_direct(s: int, D, cutoff: int = 100_000) -> DensityReport:
    """Direct truncation of prod_{q >= 3}(1 - chi_D(q)/(q^s - 1)).

    At s = 2 the log-tail is absolutely summable (< 2/(cutoff^2 ln cutoff));
    at s = 1 it is a conditionally convergent character sum over primes, so
    the reported bound is the random-sign model 3/sqrt(cutoff ln cutoff)."""
    fd = _coerce_discriminant(D)
    value = 1.0
    for q in _primes_to(cutoff):
        if q > 2:
            ch = kronecker(fd.D, q)
            if ch:
                value *= 1.0 - ch / (float(q) ** s - 1.0)
    if s == 1:
        tail = 3.0 * abs(value) / math.sqrt(cutoff * math.log(cutoff))
    else:
        tail = 2.0 * abs(value) / (float(cutoff) ** s * math.log(cutoff))
    return DensityReport(value=value, cutoff=cutoff, tail_bound=tail, method="direct")


# ---------------------------------------------------------------------------
# the quality density and relatives
# ---------------------------------------------------------------------------


def residue_counts_mod_prime(f: AnyPoly, q: int) -> tuple[int, int]:
    """(#roots of f, #solutions of f = 1) mod the odd prime q, in closed form
    for degree <= 2 (quadratic root counting via the Kronecker symbol of the
    discriminant), by enumeration otherwise.  Agrees with count_roots_mod /
    count_residue_class; that equality is property-tested."""
    poly = as_polyz(f)
    deg = poly.degree()
    if deg > 2 or deg < 0:
        return count_residue_class(poly, q, 0), count_residue_class(poly, q, 1)
    coeffs = poly.coeffs + (0,) * (3 - len(poly.coeffs))
    c, b, a = coeffs[0], coeffs[1], coeffs[2]

    def count_target(t: int) -> int:
        if a % q != 0:
            disc = (b * b - 4 * a * (c - t)) % q
            return 1 + kronecker(disc, q)
        if b % q != 0:
            return 1
        return q if (c - t) % q == 0 else 0

    return count_target(0), count_target(1)


def pr_density(
    f: AnyPoly,
    cutoff: int = 10_000,
    accelerate: bool = True,
    extension: int = 1_000_000,
) -> DensityReport:
    """Truncated product over odd primes q of
    (1 - #{f=1 mod q} / (q * (q - #{f=0 mod q}))): the heuristic density with
    which an admissible base is a primitive root modulo primes f(n).

    Direct mode stops at `cutoff` (tail estimate 2/(cutoff ln cutoff), the
    generic factors being 1 - (1 + chi)/q^2 in the mean).  Accelerated mode
    extends the same product with O(1) closed-form residue counts out to
    `extension`, shrinking the tail to 2/(extension ln extension); for degree
    > 2 the counts need enumeration, so the extension is capped at 20000.

    Raises ValueError if some odd prime divides every value of f (the product
    collapses to 0: f can represent at most finitely many primes).
    """
    poly = as_polyz(f)
    if poly.degree() < 1:
        raise ValueError("density needs a non-constant polynomial")
    limit = cutoff
    if accelerate:
        limit = max(cutoff, extension if poly.degree() <= 2 else 20_000)
    value = 1.0
    last = 3
    for q in _primes_to(limit):
        if q == 2:
            continue
        n_roots, n_ones = residue_counts_mod_prime(poly, q)
        if n_roots == q:
            raise ValueError(f"degenerate polynomial: every value is divisible by {q}")
        if n_ones:
            value *= 1.0 - n_ones / (q * (q - n_roots))
        last = q
    tail = 2.0 / (limit * math.log(limit))
    return DensityReport(
        value=value,
        cutoff=last,
        tail_bound=tail,
        method="accelerated" if accelerate else "direct",
    )


def pr_density_simple(A: int, B: int, cutoff: int = 1_000_000) -> DensityReport:
    """Simplified quality of A*X^2 + B:

        prod_{q | gcd(A, B-1), q > 2}(1 - 1/q)
      * prod_{q odd, q not | A}(1 - (1 + (-A(B-1)/q)) / q^2).
    """
    if A <= 0:
        raise ValueError("leading coefficient must be positive")
    value = 1.0
    for q, _ in factor(math.gcd(A, B - 1)).factors:
        if q > 2:
            value *= 1.0 - 1.0 / q
    M = -A * (B - 1)
    last = 3
    for q in _primes_to(cutoff):
        if q == 2 or A % q == 0:
            continue
        value *= 1.0 - (1 + kronecker(M, q)) / (q * q)
        last = q
    tail = 2.0 / (cutoff * math.log(cutoff))
    return DensityReport(value=value, cutoff=last, tail_bound=tail, method="direct")


def lehmer_naive_density(disc: int = -163, cutoff: int = 1_000_000) -> DensityReport:
    """prod over primes q with (disc/q) = 1 of (1 - 2/q^2).  Tail bound
    1/(cutoff ln cutoff) (split primes have density 1/2)."""
    value = 1.0
    last = 3
    for q in _primes_to(cutoff):
        if q > 2 and kronecker(disc, q) == 1:
            value *= 1.0 - 2.0 / (q * q)
            last = q
    tail = 1.0 / (cutoff * math.log(cutoff))
    return DensityReport(value=value, cutoff=last, tail_bound=tail, method="direct")


def lehmer_corrected_density(
    disc: int = -163, twist: int = -978, cutoff: int = 1_000_000
) -> DensityReport:
    """prod over primes q with (disc/q) = 1 of (1 - 2/(q (q-1-(twist/q)))):
    the allowable-class-corrected success probability."""
    value = 1.0
    last = 3
    for q in _primes_to(cutoff):
        if q > 2 and kronecker(disc, q) == 1:
            value *= 1.0 - 2.0 / (q * (q - 1 - kronecker(twist, q)))
            last = q
    tail = 1.0 / (cutoff * math.log(cutoff))
    return DensityReport(value=value, cutoff=last, tail_bound=tail, method="direct")


def totient_ratio_constant(cutoff: int = 10_000_000) -> DensityReport:
    """prod over primes q <= cutoff of (1 + 1/(q-1)^2): the mean of
    (p-1)/phi(p-1) over primes.  Tail < 1.3/(cutoff ln cutoff); absolute
    error below 1e-6 from cutoff 1e7 on."""
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    value = 1.0
    last = 2
    for q in iter_primes(2, cutoff):
        value *= 1.0 + 1.0 / (q - 1.0) ** 2
        last = q
    tail = 1.3 * value / (cutoff * math.log(max(cutoff, 3)))
    return DensityReport(value=value, cutoff=last, tail_bound=tail, method="direct")


def totient_ratio_product(primes: Sequence[int]) -> float:
    """prod (p-1)/phi(p-1) over the given odd primes, exact, returned as float."""
    out = Fraction(1)
    for p in primes:
        if p < 3 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        out *= Fraction(p - 1, euler_phi(p - 1))
    return float(out)


def bateman_horn_constant(
    f: AnyPoly, cutoff: int = 100_000, assume_irreducible: bool = False
) -> DensityReport:
    """prod_{p <= cutoff} (1 - N_p(f)/p) / (1 - 1/p), the density constant of
    the prime-counting heuristic for f.

    Quadratic irreducibility is checked via the discriminant; higher degree
    needs assume_irreducible=True (and enumerated root counts, so the cutoff
    is capped at 20000 there).  The tail estimate is the random-sign model
    3 * value / sqrt(cutoff ln cutoff): the generic factor is
    1 - chi(p)/(p-1) with a conditionally convergent character sum.
    """
    poly = as_polyz(f)
    deg = poly.degree()
    if deg < 1:
        raise ValueError("constant polynomials are not supported")
    if deg == 2:
        c, b, a = poly.coeffs
        if is_perfect_square(b * b - 4 * a * c):
            raise ValueError("reducible quadratic: discriminant is a perfect square")
    elif deg > 2:
        if not assume_irreducible:
            raise ValueError("degree > 2 needs assume_irreducible=True")
        cutoff = min(cutoff, 20_000)
    content = math.gcd(*poly.coeffs)
    if content != 1:
        raise ValueError("polynomial must have content 1")
    value = 1.0
    last = 2
    for p in _primes_to(cutoff):
        if deg == 2 and p > 2:
            n_roots, _ = residue_counts_mod_prime(poly, p)
        else:
            n_roots = count_residue_class(poly, p, 0)
        if n_roots == p:
            raise ValueError(f"degenerate polynomial: every value divisible by {p}")
        value *= (1.0 - n_roots / p) / (1.0 - 1.0 / p)
        last = p
    tail = 3.0 * value / math.sqrt(cutoff * math.log(cutoff))
    return DensityReport(value=value, cutoff=last, tail_bound=tail, method="direct")


# ---------------------------------------------------------------------------
# expected maximum of s independent geometric streaks
# ---------------------------------------------------------------------------


def expected_max_streak(p1: float, s: int) -> float:
    """sum_{j>=1} j ((1-p1^{j+1})^s - (1-p1^j)^s): the expected maximum streak
    over s independent geometric runs with per-step success probability p1.

    Summed until the certified remaining mass drops below 1e-12 relative.
    """
    if not 0.0 < p1 < 1.0:
        raise ValueError("success probability must lie strictly between 0 and 1")
    if s < 1:
        raise ValueError("need s >= 1")
    lp = math.log(p1)

    def big_f(j: int) -> float:
        t = math.exp(j * lp)
        if t >= 1.0:
            return 0.0
        return math.exp(s * math.log1p(-t))

    total = 0.0
    fj = big_f(1)
    j = 1
    while True:
        fj1 = big_f(j + 1)
        total += j * (fj1 - fj)
        if fj1 >= 0.5:
            # remaining mass <= J(1-F(J+1)) + s p^(J+2)/(1-p)  (1-F(j) <= s p^j)
            rem = j * (1.0 - fj1) + s * math.exp((j + 2) * lp) / (1.0 - p1)
            if rem < 1e-12 * max(total, 1.0):
                break
        fj = fj1
        j += 1
        if j > 50_000_000:
            raise RuntimeError("expected_max_streak failed to converge")
    return total


def harmonic_max_estimate(p1: float, s: int) -> float:
    """(sum_{r<=s} 1/r) / ln(1/p1) - 1/2: the Gumbel-style approximation."""
    if not 0.0 < p1 < 1.0:
        raise ValueError("success probability must lie strictly between 0 and 1")
    harmonic = _digamma(s + 1.0) - _digamma(1.0)
    return harmonic / math.log(1.0 / p1) - 0.5


def asymptotic_max_estimate(p1: float, s: int) -> float:
    """log s / log(1/p1): the leading-order growth of the expected maximum."""
    if not 0.0 < p1 < 1.0:
        raise ValueError("success probability must lie strictly between 0 and 1")
    return math.log(s) / math.log(1.0 / p1)


def simulate_max_streak(
    p1: float, s: int, trials: int, seed: int
) -> tuple[float, float]:
    """Monte-Carlo mean of the maximum of s geometric streak lengths
    (j successes then one failure), with its standard error.  Deterministic
    under a fixed seed."""
    if trials < 100:
        raise ValueError("need at least 100 trials")
    if not 0.0 < p1 < 1.0:
        raise ValueError("success probability must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    lp = math.log(p1)
    maxima = np.empty(trials)
    chunk = max(1, 4_000_000 // max(s, 1))
    for i in range(0, trials, chunk):
        t = min(chunk, trials - i)
        u = 1.0 - rng.random((t, s))  # in (0, 1]
        maxima[i : i + t] = np.floor(np.log(u) / lp).max(axis=1)
    mean = float(maxima.mean())
    stderr = float(maxima.std(ddof=1) / math.sqrt(trials))
    return mean, stderr


# ---------------------------------------------------------------------------
# how small must a base be for a streak to be surprising
# ---------------------------------------------------------------------------


def small_base_bound_definition(streak: int) -> float:
    """10^(streak/3): the defining smallness threshold for a base."""
    return 10.0 ** (streak / 3.0)


def small_base_bound_heuristic(streak: int) -> float:
    """10^(0.45*streak): the threshold the residue-class counting argument
    suggests.  Disagrees with the defining one; both are exposed."""
    return 10.0 ** (0.45 * streak)
