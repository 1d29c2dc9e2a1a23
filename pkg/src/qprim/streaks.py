"""Primes represented by a polynomial, primitive-root streaks, and counts.

The workhorse is PrimeValueStream: a lazily extended, deduplicated list of
(n, f(n)) pairs with f(n) prime, backed by a block sieve (quadratic roots mod
each sieve prime via Tonelli-Shanks) so that only survivors reach the
deterministic Miller-Rabin test.  The stream also caches the factorization of
p-1 per prime, which is what makes sweeping thousands of bases over the same
polynomial cheap.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .arith import (
    Factorization,
    factor,
    is_prime,
    is_primitive_root,
    multiplicative_order,
    primes_up_to,
    sqrt_mod,
)
from .charsums import require_valid_base
from .poly import AnyPoly, PolyZ, as_polyz

_BLOCK = 8192


@dataclass(frozen=True)
class StreakResult:
    """Outcome of walking the prime values of f in order of n, testing g.

    count is the number of distinct primes in the successful prefix.  When
    the scan exhausts n_cap without a failure, the failure fields are None
    and count is only a lower bound.  primes_seen counts every distinct prime
    value examined (successes, divisors of g that were skipped, and the
    failing prime, if any).
    """

    poly: AnyPoly
    g: int
    count: int
    n_at_failure: int | None
    failing_prime: int | None
    residual_index_at_failure: int | None
    n_scanned: int
    primes_seen: int


@dataclass(frozen=True)
class PrStats:
    """Residual-index tally over the distinct primes f(n), n <= n_cap."""

    primes_total: int
    primes_with_g_pr: int
    histogram: dict[int, int]
    n_cap: int


def _positive_tail_start(poly: PolyZ, value_floor: int) -> int:
    """Smallest N such that f is strictly increasing on [N, inf) with
    f(N) > value_floor (leading coefficient must be positive).

    Beyond N a sieve kill is trustworthy: the value exceeds every sieve prime.
    Uses the Cauchy bound on the roots of f and f'.
    """
    lead = poly.leading()
    if lead <= 0:
        raise ValueError("prime scans need a positive leading coefficient")
    bound = 1 + max(abs(c) for c in poly.coeffs) // lead + 1
    n = max(1, bound)
    while poly.eval(n) <= value_floor:
        n *= 2
    lo, hi = 1, n
    while lo < hi:  # f increasing past `bound`; binary search the crossing
        mid = (lo + hi) // 2
        if mid >= bound and poly.eval(mid) > value_floor:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _quadratic_roots_mod(poly: PolyZ, q: int) -> tuple[int, ...]:
    """Roots of a degree-<=2 polynomial mod prime q (closed form for q > 64)."""
    coeffs = poly.coeffs + (0,) * (3 - len(poly.coeffs))
    c, b, a = int(coeffs[0]), int(coeffs[1]), int(coeffs[2])
    if q <= 64 or a % q == 0:
        return tuple(n for n in range(q) if poly.eval_mod(n, q) == 0)
    disc = (b * b - 4 * a * c) % q
    s = sqrt_mod(disc, q)
    if s is None:
        return ()
    inv2a = pow(2 * a, -1, q)
    r1 = (-b + s) * inv2a % q
    r2 = (-b - s) * inv2a % q
    return (r1,) if r1 == r2 else (r1, r2)


class PrimeValueStream:
    """Ordered, deduplicated primes among f(0), f(1), ... with cached p-1
    factorizations."""

    def __init__(self, f: AnyPoly, sieve_limit: int | None = None):
        poly = as_polyz(f)
        if poly.degree() < 1:
            raise ValueError("constant polynomials have no prime-value stream")
        if sieve_limit is None:
            sieve_limit = 30_000 if poly.degree() == 2 else 2_000
        self.poly = poly
        self.sieve_limit = sieve_limit
        self._sieve_primes = primes_up_to(sieve_limit)
        self._roots: list[tuple[int, tuple[int, ...]]] | None = None
        self._direct_upto = 0  # below this n, sieve kills are double-checked
        self._entries: list[tuple[int, int]] = []  # (n, p), n ascending
        self._seen: set[int] = set()
        self._next_n = 0
        self._pm1: dict[int, Factorization] = {}

    def _build_roots(self) -> None:
        if self._roots is not None:
            return
        self._direct_upto = _positive_tail_start(self.poly, self.sieve_limit)
        roots = []
        if self.poly.degree() <= 2:
            for q in self._sieve_primes:
                rs = _quadratic_roots_mod(self.poly, q)
                if rs:
                    roots.append((q, rs))
        else:
            for q in self._sieve_primes:
                rs = tuple(n for n in range(q) if self.poly.eval_mod(n, q) == 0)
                if rs and len(rs) < q:
                    roots.append((q, rs))
        self._roots = roots

    def _extend_block(self) -> None:
        self._build_roots()
        lo = self._next_n
        hi = lo + _BLOCK
        alive = bytearray([1]) * _BLOCK
        for q, rs in self._roots:
            for r in rs:
                start = (r - lo) % q
                alive[start::q] = bytearray(len(range(start, _BLOCK, q)))
        poly = self.poly
        direct = self._direct_upto
        limit = self.sieve_limit
        for i in range(_BLOCK):
            n = lo + i
            if not alive[i]:
                if n >= direct:
                    continue
                v = poly.eval(n)
                if v < 2 or v > limit or not is_prime(v):
                    continue
            else:
                v = poly.eval(n)
                if v < 2 or not is_prime(v):
                    continue
            if v in self._seen:
                continue
            self._seen.add(v)
            self._entries.append((n, v))
        self._next_n = hi

    def entries_upto(self, n_cap: int) -> Iterator[tuple[int, int]]:
        """Yield (n, p) pairs with n <= n_cap in ascending n."""
        i = 0
        while True:
            while i >= len(self._entries) and self._next_n <= n_cap:
                self._extend_block()
            if i >= len(self._entries):
                return
            n, p = self._entries[i]
            if n > n_cap:
                return
            yield n, p
            i += 1

    def pm1_factorization(self, p: int) -> Factorization:
        fact = self._pm1.get(p)
        if fact is None:
            fact = factor(p - 1)
            self._pm1[p] = fact
        return fact

    def is_primitive_root(self, g: int, p: int) -> bool:
        return is_primitive_root(g, p, self.pm1_factorization(p))

    def residual_index(self, g: int, p: int) -> int:
        return (p - 1) // multiplicative_order(g, p, self.pm1_factorization(p))


def streak(
    f: AnyPoly, g: int, n_cap: int, stream: PrimeValueStream | None = None
) -> StreakResult:
    """Walk the distinct primes f(n), n = 0..n_cap in order, skipping primes
    dividing g, and count how many consecutive ones have g as a primitive
    root before the first failure."""
    require_valid_base(g)
    if n_cap < 0:
        raise ValueError("n_cap must be >= 0")
    if stream is None:
        stream = PrimeValueStream(f)
    count = 0
    primes_seen = 0
    for n, p in stream.entries_upto(n_cap):
        primes_seen += 1
        if g % p == 0:
            continue
        if stream.is_primitive_root(g, p):
            count += 1
        else:
            return StreakResult(
                poly=f,
                g=g,
                count=count,
                n_at_failure=n,
                failing_prime=p,
                residual_index_at_failure=stream.residual_index(g, p),
                n_scanned=n + 1,
                primes_seen=primes_seen,
            )
    return StreakResult(
        poly=f,
        g=g,
        count=count,
        n_at_failure=None,
        failing_prime=None,
        residual_index_at_failure=None,
        n_scanned=n_cap + 1,
        primes_seen=primes_seen,
    )


def verify_primitive_root_prefix(
    f: AnyPoly,
    g: int,
    prefix: int,
    n_cap: int = 10_000_000,
    stream: PrimeValueStream | None = None,
) -> bool:
    """True iff the first `prefix` distinct primes f(n) (those not dividing g)
    all have g as a primitive root.  Stops as soon as the answer is known;
    raises RuntimeError if fewer than `prefix` primes exist up to n_cap."""
    require_valid_base(g)
    if prefix < 1:
        raise ValueError("prefix must be >= 1")
    if stream is None:
        stream = PrimeValueStream(f)
    checked = 0
    for _, p in stream.entries_upto(n_cap):
        if g % p == 0:
            continue
        if not stream.is_primitive_root(g, p):
            return False
        checked += 1
        if checked >= prefix:
            return True
    raise RuntimeError(f"only {checked} usable primes found up to n_cap={n_cap}")


def prime_count(f: AnyPoly, x: int) -> int:
    """#{0 <= n <= x : f(n) prime}.  Counts n, not distinct primes."""
    if x < 0:
        raise ValueError("x must be >= 0")
    poly = as_polyz(f)
    if poly.degree() < 1:
        return (x + 1) if poly.coeffs[0] >= 2 and is_prime(poly.coeffs[0]) else 0
    if poly.leading() < 0:
        raise ValueError("prime scans need a positive leading coefficient")
    stream = PrimeValueStream(poly)
    stream._build_roots()
    count = 0
    lo = 0
    direct = stream._direct_upto
    limit = stream.sieve_limit
    while lo <= x:
        hi = min(lo + _BLOCK - 1, x)
        size = hi - lo + 1
        alive = bytearray([1]) * size
        for q, rs in stream._roots:
            for r in rs:
                start = (r - lo) % q
                if start < size:
                    alive[start::q] = bytearray(len(range(start, size, q)))
        for i in range(size):
            n = lo + i
            if not alive[i]:
                if n >= direct:
                    continue
                v = poly.eval(n)
                if 2 <= v <= limit and is_prime(v):
                    count += 1
                continue
            v = poly.eval(n)
            if v >= 2 and is_prime(v):
                count += 1
        lo = hi + 1
    return count


def pr_stats(
    f: AnyPoly, g: int, n_cap: int, stream: PrimeValueStream | None = None
) -> PrStats:
    """Histogram of residual indices of g over the distinct primes f(n) with
    n <= n_cap and p not dividing g."""
    require_valid_base(g)
    if stream is None:
        stream = PrimeValueStream(f)
    hist: dict[int, int] = {}
    total = 0
    for _, p in stream.entries_upto(n_cap):
        if g % p == 0:
            continue
        total += 1
        r = stream.residual_index(g, p)
        hist[r] = hist.get(r, 0) + 1
    return PrStats(
        primes_total=total,
        primes_with_g_pr=hist.get(1, 0),
        histogram=dict(sorted(hist.items())),
        n_cap=n_cap,
    )


def _max_streak_chunk(args: tuple) -> tuple[int, int, int]:
    f, g_base, k_lo, k_hi, n_cap = args
    stream = PrimeValueStream(f)
    best_c, best_k = -1, -1
    max_unfinished = -1
    for k in range(k_lo, k_hi + 1):
        if k == 0:
            continue
        res = streak(f, k * k * g_base, n_cap, stream=stream)
        if res.n_at_failure is None:
            max_unfinished = max(max_unfinished, res.count)
        elif res.count > best_c:
            best_c, best_k = res.count, k
    return best_c, best_k, max_unfinished


def empirical_max_streak(
    g_base: int,
    f: AnyPoly,
    k_max: int,
    n_cap: int = 200_000,
    workers: int = 1,
) -> tuple[int, int]:
    """(k_best, c_best): the maximum streak of k^2 * g_base over 1 <= k <= k_max,
    ties broken by the smallest k.

    Raises RuntimeError if some streak reaches n_cap unfinished while at least
    as long as the reported best (the maximum would then be uncertified).
    """
    require_valid_base(g_base)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if workers <= 1 or k_max < 8:
        best_c, best_k, max_unfinished = _max_streak_chunk((f, g_base, 1, k_max, n_cap))
    else:
        chunk = max(1, (k_max + workers - 1) // workers)
        jobs = [
            (f, g_base, lo, min(lo + chunk - 1, k_max), n_cap)
            for lo in range(1, k_max + 1, chunk)
        ]
        best_c, best_k, max_unfinished = -1, -1, -1
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c, k, unfin in pool.map(_max_streak_chunk, jobs):
                max_unfinished = max(max_unfinished, unfin)
                if c > best_c or (c == best_c and 0 <= k < best_k):
                    best_c, best_k = c, k
    if max_unfinished >= best_c:
        raise RuntimeError(
            f"n_cap={n_cap} too small: an unfinished streak ties or beats the best"
        )
    return best_k, best_c
