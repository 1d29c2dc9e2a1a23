"""Complete character sums, local/global Jacobi-symbol averages, and the
exact inert-prime proportion of primes represented by a polynomial.

Everything in this module is exact rational arithmetic (fractions.Fraction);
no floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Factorization, factor, kronecker, squarefree_decomposition
from .poly import (
    AnyPoly,
    Mod8Profile,
    QuadraticPoly,
    as_polyz,
    in_conjecture_f_family,
    is_perfect_square,
    mod8_profile,
)


def is_valid_base(g: int) -> bool:
    """g != -1 and g not a perfect square (bases that can be primitive roots
    for infinitely many primes)."""
    return g != -1 and not is_perfect_square(g)


def require_valid_base(g: int) -> None:
    if not is_valid_base(g):
        raise ValueError(f"invalid base {g}: must not be -1 or a perfect square")


@dataclass(frozen=True)
class FundamentalDiscriminant:
    """A fundamental quadratic-field discriminant and its (positive) odd part."""

    D: int
    odd_part: int

    @classmethod
    def from_integer(cls, D: int) -> "FundamentalDiscriminant":
        if not is_fundamental_discriminant(D):
            raise ValueError(f"{D} is not a fundamental discriminant")
        m = abs(D)
        while m % 2 == 0:
            m //= 2
        return cls(D=D, odd_part=m)


def is_fundamental_discriminant(D: int) -> bool:
    if D == 0:
        return False
    if D % 4 == 1:
        return factor(abs(D)).is_squarefree()
    if D % 4 == 0:
        m = D // 4
        if m % 4 in (2, 3):
            return factor(abs(m)).is_squarefree()
    return False


def fundamental_discriminant(g: int) -> FundamentalDiscriminant:
    """Discriminant of Q(sqrt(g)) for a valid base g: write g = g0^2*g1 with
    g1 squarefree; D = g1 if g1 = 1 mod 4, else 4*g1."""
    require_valid_base(g)
    _, g1 = squarefree_decomposition(g)
    D = g1 if g1 % 4 == 1 else 4 * g1
    return FundamentalDiscriminant.from_integer(D)


def jacobsthal_sum(a: int, p: int) -> int:
    """sum_{m=0}^{p-1} ((m^2+a)/p) for odd prime p: p-1 if p | a, else -1."""
    _require_odd_prime(p)
    return p - 1 if a % p == 0 else -1


def _require_odd_prime(p: int) -> None:
    from .arith import is_prime

    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def complete_char_sum(f: QuadraticPoly, p: int) -> int:
    """sum_{m=0}^{p-1} (f(m)/p) in closed form for odd prime p."""
    _require_odd_prime(p)
    a, c, d = f.a, f.c, f.d
    if a % p != 0 and d % p != 0:
        return -kronecker(a, p)
    if a % p == 0 and d % p == 0:
        return p * kronecker(c, p)
    return (p - 1) * kronecker(a, p)


def local_char_average(f: QuadraticPoly, p: int) -> Fraction:
    """Average Jacobi symbol of f over the classes mod p coprime to f, in
    closed form (four cases by p | a, p | d)."""
    _require_odd_prime(p)
    a, c, d = f.a, f.c, f.d
    pa, pd = a % p == 0, d % p == 0
    if not pa and not pd:
        return Fraction(-kronecker(a, p), p - 1 - kronecker(d, p))
    if pa and not pd:
        return Fraction(0)
    if not pa and pd:
        return Fraction(kronecker(a, p))
    return Fraction(kronecker(c, p))


def brute_char_average(f: AnyPoly, p: int) -> Fraction:
    """Enumeration form of the local average, valid for any degree:
    sum_r (f(r)/p) / #{r mod p : gcd(f(r), p) = 1}."""
    _require_odd_prime(p)
    poly = as_polyz(f)
    total = 0
    units = 0
    for r in range(p):
        v = poly.eval_mod(r, p)
        if v != 0:
            units += 1
            total += kronecker(v, p)
    if units == 0:
        raise ValueError(f"all values of f are divisible by {p}: average undefined")
    return Fraction(total, units)


def _require_odd_squarefree(d: int) -> Factorization:
    if d <= 1 or d % 2 == 0:
        raise ValueError(f"modulus {d} must be odd, squarefree and > 1")
    fact = factor(d)
    if not fact.is_squarefree():
        raise ValueError(f"modulus {d} must be squarefree")
    return fact


def char_average(f: QuadraticPoly, d: int) -> Fraction:
    """Multiplicative extension prod_{p | d} of the local average, for odd
    squarefree d > 1."""
    fact = _require_odd_squarefree(d)
    out = Fraction(1)
    for p, _ in fact.factors:
        out *= local_char_average(f, p)
        if out == 0:
            break
    return out


def char_average_gcd_form(f: QuadraticPoly, d: int) -> Fraction:
    """Closed form of the average mod d via gcd bookkeeping:
    (c/(d,a,e)) * (a/(d/(d,a))) * prod_{q|d, q coprime to a*e} -1/(q-1-(e/q)),
    and 0 when (d,a) does not divide e  (e = discriminant)."""
    fact = _require_odd_squarefree(d)
    a, c, e = f.a, f.c, f.d
    da = math.gcd(d, a)
    if e % da != 0:
        return Fraction(0)
    dae = math.gcd(da, abs(e)) if e != 0 else da
    out = Fraction(kronecker(c, dae) * kronecker(a, d // da))
    for q, _ in fact.factors:
        if a % q != 0 and e % q != 0:
            out *= Fraction(-1, q - 1 - kronecker(e, q))
    return out


def char_average_enumeration(f: AnyPoly, d: int) -> Fraction:
    """Defining enumeration of the average over a full period mod d."""
    _require_odd_squarefree(d)
    poly = as_polyz(f)
    total = 0
    units = 0
    for r in range(d):
        v = poly.eval_mod(r, d)
        if math.gcd(v, d) == 1:
            units += 1
            total += kronecker(v, d)
    if units == 0:
        raise ValueError(f"no residue class mod {d} is coprime to f")
    return Fraction(total, units)


def _odd_part_average(f: AnyPoly, odd_part: int) -> Fraction:
    if isinstance(f, QuadraticPoly):
        return char_average(f, odd_part)
    out = Fraction(1)
    for p, _ in factor(odd_part).factors:
        out *= brute_char_average(f, p)
        if out == 0:
            break
    return out


def inert_proportion(f: AnyPoly, D: FundamentalDiscriminant | int) -> Fraction:
    """Exact proportion of primes p = f(n) that are inert in the quadratic
    field of fundamental discriminant D, per the mod-8 case table.

    Quadratic f uses the closed-form local averages; general f falls back to
    enumeration at each odd prime dividing D.
    """
    if isinstance(D, int):
        D = FundamentalDiscriminant.from_integer(D)
    if D.odd_part == 1:
        raise ValueError(f"discriminant {D.D} has no odd prime divisor")
    a_odd = _odd_part_average(f, D.odd_part)
    if D.D % 2 != 0:
        return (1 - a_odd) / 2
    prof: Mod8Profile = mod8_profile(f)
    a1, a3, a5, a7 = prof.as_tuple()
    r = D.D % 32
    if D.D % 8 == 4:
        beta = a3 + a7 - a1 - a5
    elif r == 8:
        beta = a3 + a5 - a1 - a7
    elif r == 24:
        beta = a5 + a7 - a1 - a3
    else:  # fundamental even discriminants are = 4 mod 8 or = 8, 24 mod 32
        raise ValueError(f"{D.D} is not a fundamental discriminant")
    return (1 + beta * a_odd) / 2


def admissible_discriminants(f: QuadraticPoly, bound: int) -> list[FundamentalDiscriminant]:
    """All fundamental discriminants D with |D| <= bound and inert proportion
    exactly 1 for f.  Complete: such D must divide 24*a*d, so only divisors
    of that product are scanned."""
    if not in_conjecture_f_family(f):
        raise ValueError("polynomial is outside the quadratic search family")
    base = 24 * f.a * abs(f.d)
    out = []
    for t in factor(base).divisors(limit=bound):
        for D in (t, -t):
            if not is_fundamental_discriminant(D):
                continue
            fd = FundamentalDiscriminant.from_integer(D)
            if fd.odd_part == 1:
                continue
            if inert_proportion(f, fd) == 1:
                out.append(fd)
    return sorted(out, key=lambda fd: fd.D)
