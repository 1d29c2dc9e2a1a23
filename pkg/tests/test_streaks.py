"""Tests for the streak statistic, prime counts, and residual-index stats."""

import pytest

from qprim.arith import is_prime, is_primitive_root
from qprim.poly import PolyZ, QuadraticPoly
from qprim.streaks import (
    PrimeValueStream,
    empirical_max_streak,
    pr_stats,
    prime_count,
    streak,
    verify_primitive_root_prefix,
)

L = QuadraticPoly(326, 0, 3)
GRIFFIN = QuadraticPoly(10, 0, 7)


def test_lehmer_streak():
    res = streak(L, 326, 4000)
    assert res.count == 206
    assert res.failing_prime == 1838843753
    assert res.n_at_failure == 2375
    assert res.residual_index_at_failure == 83


def test_griffin_streak():
    res = streak(GRIFFIN, 10, 2000)
    assert res.count == 16
    assert res.failing_prime == 7297
    assert res.n_at_failure == 27  # frozen from the oracle run
    assert res.residual_index_at_failure == 3


def test_streak_double_entry():
    # every prime in the successful prefix re-verifies independently
    res = streak(L, 326, 4000)
    stream = PrimeValueStream(L)
    counted = 0
    for n, p in stream.entries_upto(res.n_at_failure - 1):
        assert is_prime(p)
        assert is_primitive_root(326, p)
        counted += 1
    assert counted == res.count
    assert not is_primitive_root(326, res.failing_prime)


def test_streak_invalid_bases():
    for g in (-1, 0, 1, 4, 9, 326**2):
        with pytest.raises(ValueError):
            streak(QuadraticPoly(1, 1, 41), g, 100)


def test_streak_monotone_in_cap():
    prev = -1
    for cap in (10, 100, 500, 2375, 3000):
        res = streak(L, 326, cap)
        assert res.count >= prev
        prev = res.count
    full = streak(L, 326, 2375)
    assert full.count == 206 and full.n_at_failure == 2375
    more = streak(L, 326, 100_000)
    assert (more.count, more.n_at_failure) == (206, 2375)  # stabilized


def test_streak_cap_without_failure():
    res = streak(L, 326, 100)
    assert res.n_at_failure is None
    assert res.failing_prime is None
    assert res.residual_index_at_failure is None
    assert res.n_scanned == 101
    assert res.count > 0


def test_streak_skips_primes_dividing_base():
    # k = 3: L(0) = 3 divides 9*326, so the prime 3 is skipped, not failed
    res3 = streak(L, 9 * 326, 4000)
    res1 = streak(L, 326, 4000)
    assert res3.primes_seen >= 1
    stream = PrimeValueStream(L)
    first = next(iter(stream.entries_upto(10)))
    assert first == (0, 3)
    assert res1.count != res3.count or res1.failing_prime != res3.failing_prime


def test_streak_dedupe_matches_set_oracle():
    # vertex inside the range: values repeat symmetrically
    f = PolyZ((29, -10, 1))  # (X-5)^2 + 4
    seen = set()
    expected = []
    for n in range(0, 41):
        v = f.eval(n)
        if v >= 2 and is_prime(v) and v not in seen:
            seen.add(v)
            expected.append((n, v))
    stream = PrimeValueStream(f)
    got = list(stream.entries_upto(40))
    assert got == expected
    res = streak(f, 2, 40)
    assert res.count == 5
    assert res.failing_prime == 229
    assert res.n_at_failure == 20


def test_streak_skips_small_values():
    f = PolyZ((-4, 0, 1))  # X^2 - 4: negative and tiny values at n <= 2
    stream = PrimeValueStream(f)
    first = next(iter(stream.entries_upto(10)))
    assert first == (3, 5)


def test_degenerate_and_even_valued_streams():
    # content 3: the only prime value is 3 itself, then everything is 3k > 3
    f = QuadraticPoly(3, 3, 3)
    assert list(PrimeValueStream(f).entries_upto(100)) == [(0, 3)]
    assert prime_count(f, 100) == 1
    res = streak(f, 10, 50)  # 10 = 1 mod 3 is not a primitive root mod 3
    assert (res.count, res.failing_prime) == (0, 3)
    # always even and > 2: no prime values at all
    assert list(PrimeValueStream(QuadraticPoly(1, 1, 4)).entries_upto(2000)) == []


def test_prime_count_examples():
    assert prime_count(QuadraticPoly(1, 1, 41), 39) == 40
    assert prime_count(QuadraticPoly(1, 1, 27941), 39) == 30
    assert prime_count(PolyZ((41,)), 10) == 11  # constant prime counts every n
    assert prime_count(PolyZ((40,)), 10) == 0


def test_prime_count_matches_brute():
    for coeffs in ((7, 0, 10), (3, 0, 326), (41, 1, 1), (29, -10, 1), (5, 3)):
        f = PolyZ(coeffs)
        for x in (0, 1, 17, 400, 3001):
            brute = sum(
                1 for n in range(x + 1) if f.eval(n) >= 2 and is_prime(f.eval(n))
            )
            assert prime_count(f, x) == brute, (coeffs, x)


def test_pr_stats_lehmer():
    st = pr_stats(L, 326, 100_000)
    # frozen from the oracle run; fraction sits in the expected band
    assert st.primes_total == 6158
    assert st.primes_with_g_pr == 6121
    frac = st.primes_with_g_pr / st.primes_total
    assert 0.988 <= frac <= 0.998
    assert st.histogram[1] == st.primes_with_g_pr
    assert sum(st.histogram.values()) == st.primes_total
    # residual indices of failures stay coprime to the small primes
    for r in st.histogram:
        if r > 1:
            assert r >= 41


def test_pr_stats_zero():
    st = pr_stats(QuadraticPoly(1, 0, 4), 10, 0)  # f(0) = 4 composite
    assert st.primes_total == 0
    assert st.primes_with_g_pr == 0
    assert st.histogram == {}


def test_empirical_max_streak_k1_reduces_to_streak():
    k_best, c_best = empirical_max_streak(326, L, 1, n_cap=4000)
    assert (k_best, c_best) == (1, 206)


def test_empirical_max_streak_cap_guard():
    with pytest.raises(RuntimeError):
        empirical_max_streak(326, L, 4, n_cap=50)


def test_verify_prefix():
    assert verify_primitive_root_prefix(L, 326, 206, 4000)
    assert not verify_primitive_root_prefix(L, 326, 207, 4000)
    with pytest.raises(RuntimeError):
        # no failure below n = 1000, but nowhere near 10000 primes either
        verify_primitive_root_prefix(L, 326, 10_000, 1000)
