import math
import time
from fractions import Fraction

import pytest

from sncover.bounds import (
    compare_gh_range,
    construct_h_below_g,
    delta_e_size,
    delta_e_size_relation,
    factorize,
    g_bound,
    h_bound,
    nu,
    phi_interval,
)
from sncover.errors import DomainError


def test_factorize():
    assert factorize(12) == ((2, 2), (3, 1))
    assert factorize(955049953) == tuple((p, 1) for p in (11, 13, 17, 19, 23, 29, 31))
    assert nu(30) == 3


def test_g_values():
    assert g_bound(8) == 3
    assert g_bound(10) == 3
    assert g_bound(12) == 4
    assert g_bound(14) == 4
    for p in (5, 7, 11, 13):
        assert g_bound(p) == (p - 1) // 2
    assert g_bound(9) == 4
    assert g_bound(4) == 2
    assert g_bound(16) == 5
    with pytest.raises(DomainError):
        g_bound(3)


def test_g_at_least_two_to_a_million():
    # smallest-prime-factor sieve feeds the formula its factorizations
    limit = 10**6
    spf = list(range(limit + 1))
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            for q in range(p * p, limit + 1, p):
                if spf[q] == q:
                    spf[q] = p
    for n in range(4, limit + 1):
        factors = []
        r = n
        while r > 1:
            p = spf[r]
            a = 0
            while r % p == 0:
                r //= p
                a += 1
            factors.append((p, a))
        assert g_bound(n, factors) >= 2


def test_phi_interval_examples():
    assert phi_interval(4, 6, 12) == 1
    assert phi_interval(0, 12, 12) == 4
    assert phi_interval(Fraction(10, 3), 5, 10) == 0


def test_phi_interval_brute_force():
    for n in range(4, 501):
        for x, y in ((Fraction(n, 3), Fraction(n, 2)), (Fraction(n, 4), Fraction(n, 2)), (0, n)):
            want = sum(1 for i in range(1, n + 1) if x < i < y and math.gcd(i, n) == 1)
            assert phi_interval(x, y, n) == want, (n, x, y)


def test_phi_interval_domain():
    with pytest.raises(DomainError):
        phi_interval(5, 5, 10)
    with pytest.raises(DomainError):
        phi_interval(3, 12, 10)


def test_h_values():
    assert h_bound(4) == 2
    for p in (5, 7, 11, 13):
        assert h_bound(p) == 2 + (p - 1) // 2
    assert h_bound(12) == 7
    with pytest.raises(DomainError):
        h_bound(3)


def test_delta_e_size():
    assert delta_e_size(8) == 3
    assert delta_e_size(12) == 4
    assert delta_e_size(10) == 4
    with pytest.raises(DomainError):
        delta_e_size(9)


def test_delta_e_relation_examples():
    r = delta_e_size_relation(8)
    assert (r.g, r.delta_e, r.equal, r.classification) == (3, 3, True, "2^alpha")
    r = delta_e_size_relation(12)
    assert (r.g, r.delta_e, r.equal, r.classification) == (4, 4, True, "4q")
    r = delta_e_size_relation(18)
    assert (r.g, r.delta_e, r.equal, r.classification) == (5, 6, False, "other")
    assert delta_e_size_relation(20).equal


def test_gh_comparison_small_even():
    for row in compare_gh_range(6, 22):
        if row.n % 2 == 0:
            assert row.g < row.h, row


def test_gh_comparison_larger_even():
    for row in compare_gh_range(24, 200):
        if row.n % 2 == 0:
            assert row.g < row.h
            # consistent with the chain g <= n/4 + 2 <= n/3 <= h
            assert row.g <= row.n // 4 + 2
            assert row.h >= row.n // 3


def test_constructed_h_below_g():
    t0 = time.time()
    rec = construct_h_below_g(11)
    elapsed = time.time() - t0
    assert rec.primes == (11, 13, 17, 19, 23, 29, 31)
    assert rec.n == math.prod(rec.primes)
    assert rec.h < rec.g
    # re-verify both sides from the factorization
    fac = tuple((p, 1) for p in rec.primes)
    assert rec.g == g_bound(rec.n, fac)
    assert rec.h == h_bound(rec.n, fac)
    assert elapsed < 1.0
    # one prime earlier the product family has not flipped yet
    shorter = math.prod(rec.primes[:-1])
    fac6 = tuple((p, 1) for p in rec.primes[:-1])
    assert h_bound(shorter, fac6) >= g_bound(shorter, fac6)


def test_constructed_rejects_bad_start():
    with pytest.raises(DomainError):
        construct_h_below_g(4)
    with pytest.raises(DomainError):
        construct_h_below_g(2)
