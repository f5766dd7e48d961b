"""Closed-form bounds on the (special) normal covering number of S_n.

Two bound functions are computed exactly from the factorization of n:

* g(n) — four cases over nu(n) (number of distinct primes p1 < p2 < ...):
    nu=1, a1=1:         n/2 (1 - 1/p1)
    nu=1, a1>=2:        n/2 (1 - 1/p1) + 1
    nu=2, (a1,a2)=(1,1): n/2 (1 - 1/p1)(1 - 1/p2) + 1
    otherwise:          n/2 (1 - 1/p1)(1 - 1/p2) + 2
  The leading term counts the x < n/2 coprime to p1 (and p2), i.e. the
  intransitive members of the canonical basic set.

* h(n) — via the coprime counter phi(I; n) = #{i integer in I, gcd(i,n)=1}
  over an open interval I:
    n even: floor(n/3) + nu(n) + phi((n/3, n/2); n)
    n odd:  floor(n/4) + nu(n) + phi((n/4, n/2); n) + 1

phi is evaluated by Moebius inclusion-exclusion over squarefree divisors,
so degrees around 10^9 cost 2^nu(n) floor operations, never an enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DomainError

Rational = Union[int, Fraction]

# reported linear bounds on r(S_n): k*n <= r(S_n) <= gamma'(S_n) <= 2n/3,
# with k = 0.025 valid for even n >= 792000 (literature constant; its
# derivation is outside this toolkit, so it never enters certificates)
LINEAR_LOWER_CONSTANT = 0.025
LINEAR_LOWER_EVEN_THRESHOLD = 792_000
LINEAR_UPPER_SLOPE = Fraction(2, 3)


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization ((p1, a1), ...) with p1 < p2 < ..."""
    if n < 1:
        raise DomainError("factorization needs n >= 1")
    out = []
    r = n
    p = 2
    while p * p <= r:
        if r % p == 0:
            a = 0
            while r % p == 0:
                r //= p
                a += 1
            out.append((p, a))
        p += 1 if p == 2 else 2
    if r > 1:
        out.append((r, 1))
    return tuple(out)


def nu(n: int, factors: Optional[Sequence[tuple[int, int]]] = None) -> int:
    """Number of distinct prime factors."""
    return len(factors if factors is not None else factorize(n))


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise DomainError(f"{num}/{den} is not an integer")
    return q


def g_bound(n: int, factors: Optional[Sequence[tuple[int, int]]] = None) -> int:
    """The four-case bound g(n) for n >= 4 (always >= 2)."""
    if n < 4:
        raise DomainError("g is defined for n >= 4")
    fac = tuple(factors) if factors is not None else factorize(n)
    p1 = fac[0][0]
    if len(fac) == 1:
        base = _exact_div(n * (p1 - 1), 2 * p1)
        return base if fac[0][1] == 1 else base + 1
    p2 = fac[1][0]
    base = _exact_div(n * (p1 - 1) * (p2 - 1), 2 * p1 * p2)
    if len(fac) == 2 and fac[0][1] == 1 and fac[1][1] == 1:
        return base + 1
    return base + 2


def _squarefree_divisors(primes: Sequence[int]) -> list[tuple[int, int]]:
    """(divisor, moebius sign) over all products of distinct primes."""
    out = [(1, 1)]
    for p in primes:
        out += [(d * p, -s) for d, s in out]
    return out


def _multiples_below(y: Rational, d: int) -> int:
    """#{m >= 1 : m*d < y}."""
    q = Fraction(y) / d
    fl = math.floor(q)
    return fl - 1 if fl == q else fl


def _multiples_upto(x: Rational, d: int) -> int:
    """#{m >= 1 : m*d <= x}."""
    return math.floor(Fraction(x) / d)


def phi_interval(
    x: Rational,
    y: Rational,
    n: int,
    factors: Optional[Sequence[tuple[int, int]]] = None,
) -> int:
    """#{i integer : x < i < y, gcd(i, n) = 1} (both endpoints strict)."""
    if not (0 <= Fraction(x) < Fraction(y) <= n):
        raise DomainError(f"malformed interval ({x}, {y}) for n = {n}")
    fac = tuple(factors) if factors is not None else factorize(n)
    total = 0
    for d, sign in _squarefree_divisors([p for p, _ in fac]):
        total += sign * (_multiples_below(y, d) - _multiples_upto(x, d))
    return total


def h_bound(n: int, factors: Optional[Sequence[tuple[int, int]]] = None) -> int:
    """The interval-count bound h(n) for n >= 4."""
    if n < 4:
        raise DomainError("h is defined for n >= 4")
    fac = tuple(factors) if factors is not None else factorize(n)
    k = len(fac)
    if n % 2 == 0:
        return n // 3 + k + phi_interval(Fraction(n, 3), Fraction(n, 2), n, fac)
    return n // 4 + k + phi_interval(Fraction(n, 4), Fraction(n, 2), n, fac) + 1


def delta_e_size(n: int) -> int:
    """ceil((n+4)/4): even x < n/2 intransitives plus the half wreath and A_n."""
    if n < 4 or n % 2:
        raise DomainError("the even-degree construction needs even n >= 4")
    return (n + 7) // 4


@dataclass(frozen=True)
class DeltaERelation:
    n: int
    g: int
    delta_e: int
    equal: bool
    classification: str  # "2^alpha" | "4q" | "other"


def delta_e_size_relation(n: int) -> DeltaERelation:
    """g(n) vs ceil((n+4)/4), with equality exactly at n = 2^alpha and n = 4q."""
    size = delta_e_size(n)
    fac = factorize(n)
    g = g_bound(n, fac)
    if len(fac) == 1:
        cls = "2^alpha"
    elif n % 4 == 0 and _is_prime(n // 4):
        cls = "4q"
    else:
        cls = "other"
    equal = g == size
    if equal != (cls != "other"):
        raise AssertionError(f"equality classification broken at n = {n}")
    return DeltaERelation(n, g, size, equal, cls)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _next_prime(n: int) -> int:
    k = n + 1
    while not _is_prime(k):
        k += 1
    return k


@dataclass(frozen=True)
class GHComparison:
    n: int
    g: int
    h: int

    @property
    def sign(self) -> str:
        return "<" if self.g < self.h else (">" if self.g > self.h else "=")


def compare_gh_range(lo: int, hi: int) -> list[GHComparison]:
    if lo < 4 or hi < lo:
        raise DomainError("range must satisfy 4 <= lo <= hi")
    out = []
    for n in range(lo, hi + 1):
        fac = factorize(n)
        out.append(GHComparison(n, g_bound(n, fac), h_bound(n, fac)))
    return out


@dataclass(frozen=True)
class ConstructedComparison:
    primes: tuple[int, ...]
    n: int
    g: int
    h: int

    def to_json(self) -> dict:
        return {
            "primes": list(self.primes),
            "n": self.n,
            "g": self.g,
            "h": self.h,
        }


def construct_h_below_g(start_prime: int = 11, max_factors: int = 40) -> ConstructedComparison:
    """Smallest product of consecutive odd primes from ``start_prime`` with
    h(n) < g(n); both sides evaluated exactly (n is never enumerated).

    Needs (1 - 1/p1)(1 - 1/p2) > 1/2 so that g grows faster than h along
    the product family.
    """
    if start_prime < 3 or not _is_prime(start_prime):
        raise DomainError("start_prime must be an odd prime")
    p1 = start_prime
    p2 = _next_prime(p1)
    if Fraction(p1 - 1, p1) * Fraction(p2 - 1, p2) <= Fraction(1, 2):
        raise DomainError(
            f"primes {p1}, {p2} violate (1-1/p1)(1-1/p2) > 1/2; choose a larger start"
        )
    primes = [p1, p2, _next_prime(p2)]
    while len(primes) <= max_factors:
        n = math.prod(primes)
        fac = tuple((p, 1) for p in primes)
        g = g_bound(n, fac)
        h = h_bound(n, fac)
        if h < g:
            return ConstructedComparison(tuple(primes), n, g, h)
        primes.append(_next_prime(primes[-1]))
    raise DomainError(f"no h < g product found within {max_factors} factors")
