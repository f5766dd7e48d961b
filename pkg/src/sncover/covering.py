"""Named basic-set constructions, verification, and per-degree reporting.

The named sets are the explicit constructions behind the g, h and
ceil((n+4)/4) bounds:

* ``deltaC`` — canonical set: P_x for x < n/2 coprime to p1*p2, plus the
  two wreaths over p1 and p2 (needs nu(n) >= 3, or nu(n) = 2 away from the
  squarefree-semiprime case); size g(n).
* ``primePower`` / ``twoP`` — S_2 wr S_(n/2) plus the odd-x P_x, for
  n = 2^alpha and n = 2p; sizes 2^(alpha-2) + 1 and (p+1)/2 = g(n).
* ``delta1`` / ``delta2`` — the interval constructions of size h(n)
  (delta2 is the odd-degree variant and adds A_n).
* ``deltaE`` — even degree: even-x P_x, S_(n/2) wr S_2, A_n; size
  ceil((n+4)/4).
* ``prime`` — AGL_1(p) plus P_2..P_((p-1)/2): the unique minimal covering
  of a prime-degree symmetric group, size (p-1)/2.

``interval_report`` assembles everything known about one degree: g, h,
the even-degree set size, a certified minimum cover over the standard pool
when the exact search is feasible, the best special-set upper bound for
gamma', and the resulting interval for the intersective-factor count r,
collapsed to a point whenever the covering number certifiably equals g
or the degree is odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import (
    LINEAR_LOWER_CONSTANT,
    LINEAR_LOWER_EVEN_THRESHOLD,
    delta_e_size,
    factorize,
    g_bound,
    h_bound,
    phi_interval,
)
from .components import (
    ALTERNATING,
    Affine,
    BasicSet,
    Component,
    Imprimitive,
    Intransitive,
    component_key,
    is_prime,
    type_coverage,
)
from .errors import ApplicabilityError, DomainError
from .metacyclic import SpecialVerdict, is_special_basic_set
from .partitions import Partition
from .search import SUPPORTED_CERTIFY, SearchLimits, certify_degree, min_cover_search

NAMED_SETS = ("deltaC", "delta1", "delta2", "deltaE", "prime", "primePower", "twoP")


def _intransitives(xs) -> list[Component]:
    return [Intransitive(x) for x in xs]


def build_named_set(name: str, n: int) -> BasicSet:
    """The literal component list of a named construction, size-checked."""
    fac = factorize(n) if n >= 1 else ()
    k = len(fac)
    if name == "deltaC":
        if n < 4 or not (k >= 3 or (k == 2 and (fac[0][1], fac[1][1]) != (1, 1))):
            raise ApplicabilityError(
                "nu(n) >= 3, or nu(n) = 2 with exponents != (1, 1)",
                f"n = {n} has factorization {fac}",
            )
        p1, p2 = fac[0][0], fac[1][0]
        comps = _intransitives(
            x for x in range(1, (n - 1) // 2 + 1) if math.gcd(x, p1 * p2) == 1
        )
        comps += [Imprimitive(p1, n // p1), Imprimitive(p2, n // p2)]
        expected = g_bound(n, fac)
    elif name == "delta1":
        if n < 6 or is_prime(n):
            raise ApplicabilityError("n >= 6 and n not a prime", f"n = {n}")
        comps = _intransitives(range(1, n // 3 + 1))
        comps += _intransitives(
            x for x in range(n // 3 + 1, (n - 1) // 2 + 1) if math.gcd(x, n) == 1
        )
        comps += [Imprimitive(p, n // p) for p, _ in fac]
        expected = n // 3 + k + phi_interval(Fraction(n, 3), Fraction(n, 2), n, fac)
    elif name == "delta2":
        if n % 2 == 0:
            raise ApplicabilityError("n odd", f"n = {n} is even")
        if n < 6 or is_prime(n):
            raise ApplicabilityError("n >= 6 and n not a prime", f"n = {n}")
        comps = _intransitives(range(1, n // 4 + 1))
        comps += _intransitives(
            x for x in range(n // 4 + 1, (n - 1) // 2 + 1) if math.gcd(x, n) == 1
        )
        comps += [Imprimitive(p, n // p) for p, _ in fac]
        comps.append(ALTERNATING)
        expected = n // 4 + k + phi_interval(Fraction(n, 4), Fraction(n, 2), n, fac) + 1
    elif name == "deltaE":
        if n < 4 or n % 2:
            raise ApplicabilityError("n even, n >= 4", f"n = {n}")
        comps = _intransitives(x for x in range(2, (n - 1) // 2 + 1, 2))
        comps += [Imprimitive(n // 2, 2), ALTERNATING]
        expected = delta_e_size(n)
    elif name == "prime":
        if not is_prime(n) or n < 5:
            raise ApplicabilityError("n a prime >= 5", f"n = {n}")
        comps = [Affine(n)] + _intransitives(range(2, (n - 1) // 2 + 1))
        expected = (n - 1) // 2
    elif name == "primePower":
        if not (k == 1 and fac[0][0] == 2 and fac[0][1] >= 2):
            raise ApplicabilityError("n = 2^alpha with alpha >= 2", f"n = {n}")
        comps = [Imprimitive(2, n // 2)] + _intransitives(range(1, n // 2, 2))
        expected = n // 4 + 1
    elif name == "twoP":
        if not (k == 2 and fac[0] == (2, 1) and fac[1][1] == 1):
            raise ApplicabilityError("n = 2p with p an odd prime", f"n = {n}")
        comps = [Imprimitive(2, n // 2)] + _intransitives(range(1, n // 2, 2))
        expected = (n // 2 + 1) // 2
    else:
        raise DomainError(f"unknown named set {name!r} (choose from {NAMED_SETS})")
    comps.sort(key=component_key)
    bs = BasicSet(n, tuple(comps), claimed_basic=True, claimed_special=True, name=name)
    if bs.size != expected:
        raise AssertionError(f"{name}({n}) built with size {bs.size}, expected {expected}")
    return bs


def s8_special_triple() -> list[BasicSet]:
    """The three size-3 special basic sets of degree 8."""
    w24 = Imprimitive(2, 4)
    return [
        build_named_set("deltaE", 8),
        BasicSet(
            8,
            tuple(sorted([Intransitive(1), Intransitive(3), w24], key=component_key)),
            claimed_basic=True,
            claimed_special=True,
            name="{P_1,P_3,S_2 wr S_4}",
        ),
        BasicSet(
            8,
            tuple(sorted([Intransitive(1), ALTERNATING, w24], key=component_key)),
            claimed_basic=True,
            claimed_special=True,
            name="{P_1,A_8,S_2 wr S_4}",
        ),
    ]


@dataclass
class BasicVerdict:
    ok: bool
    uncovered: list[Partition]
    unresolved: list[Partition]
    trivial_singleton: bool

    def witnesses(self) -> list[str]:
        return [T.bracket() for T in self.uncovered + self.unresolved]


def verify_basic_set(delta: BasicSet) -> BasicVerdict:
    """Every type of S_n must belong to some component, and the set must
    not be the lone alternating group (whose conjugates miss odd types
    anyway, but the degenerate shape is flagged explicitly)."""
    cover = type_coverage(delta.n, delta.components)
    trivial = delta.components == (ALTERNATING,)
    return BasicVerdict(
        ok=cover.complete and not trivial,
        uncovered=cover.uncovered,
        unresolved=cover.unresolved,
        trivial_singleton=trivial,
    )


def verify_special_basic_set(delta: BasicSet, *, allow_oracle: bool = True) -> SpecialVerdict:
    return is_special_basic_set(delta, allow_oracle=allow_oracle)


# ---------------------------------------------------------------------------
# per-degree report


GAMMA_KNOWN = "known-equality"
GAMMA_RULES = "rule-certified"
GAMMA_POOL = "pool-certified"

DEFAULT_SEARCH_DEGREE = 30


@dataclass
class BoundReport:
    n: int
    g: Optional[int]
    h: Optional[int]
    delta_e: Optional[int]
    gamma: Optional[int]
    gamma_status: Optional[str]
    gamma_prime_upper: Optional[int]
    r_lo: int
    r_hi: int
    collapse_rule: Optional[str]
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": "bound-report",
            "version": 1,
            "n": self.n,
            "g": self.g,
            "h": self.h,
            "delta_e_size": self.delta_e,
            "gamma": self.gamma,
            "gamma_status": self.gamma_status,
            "gamma_prime_upper": self.gamma_prime_upper,
            "r_interval": [self.r_lo, self.r_hi],
            "collapse_rule": self.collapse_rule,
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BoundReport":
        return cls(
            n=obj["n"],
            g=obj["g"],
            h=obj["h"],
            delta_e=obj["delta_e_size"],
            gamma=obj["gamma"],
            gamma_status=obj["gamma_status"],
            gamma_prime_upper=obj["gamma_prime_upper"],
            r_lo=obj["r_interval"][0],
            r_hi=obj["r_interval"][1],
            collapse_rule=obj["collapse_rule"],
            notes=list(obj.get("notes", [])),
        )


_LINEAR_NOTE = (
    f"linear bounds: k*n <= r(S_n) <= gamma'(S_n) <= 2n/3, with k = "
    f"{LINEAR_LOWER_CONSTANT} valid for even n >= {LINEAR_LOWER_EVEN_THRESHOLD} "
    "(reported constant, not certified here)"
)


def interval_report(
    n: int,
    *,
    run_search: bool = True,
    max_search_degree: int = DEFAULT_SEARCH_DEGREE,
    limits: Optional[SearchLimits] = None,
) -> BoundReport:
    """Everything known about degree n, with provenance on the gamma value.

    gamma is filled from the strongest available source: the prime/odd
    equality gamma = g for odd n with at most two prime factors, the
    rule-certified degrees, or an exact pool search.  The r interval
    collapses to a point when gamma = g (then r = gamma' = gamma) or when
    n is odd with a known gamma; a bare search otherwise pins r into
    {gamma, gamma + 1}.
    """
    if n < 3:
        raise DomainError("reports start at degree 3")
    if n == 3:
        return BoundReport(
            n=3,
            g=None,
            h=None,
            delta_e=None,
            gamma=2,
            gamma_status=GAMMA_KNOWN,
            gamma_prime_upper=2,
            r_lo=2,
            r_hi=2,
            collapse_rule="degree-three",
            notes=["unique minimal covering {A_3, P_1}; no special metacyclic subgroups"],
        )
    fac = factorize(n)
    g = g_bound(n, fac)
    h = h_bound(n, fac)
    de = delta_e_size(n) if n % 2 == 0 else None
    notes = [_LINEAR_NOTE]

    gamma: Optional[int] = None
    status: Optional[str] = None
    if n % 2 == 1 and len(fac) <= 2:
        gamma, status = g, GAMMA_KNOWN
        notes.append("odd degree with nu(n) <= 2: covering number equals g(n)")
    elif run_search and n <= max_search_degree:
        if n in SUPPORTED_CERTIFY:
            cert = certify_degree(n)
            gamma, status = cert.gamma, GAMMA_RULES
            notes.append("value certified over all maximal subgroups by the rule engine")
        else:
            cover = min_cover_search(n, limits=limits)
            if cover.feasible:
                gamma, status = cover.size, GAMMA_POOL
                notes.append(
                    "minimum over the standard pool; primitive components beyond "
                    "the fact table are excluded rule-based, not classification-based"
                )

    candidates = [g]
    if n >= 6 and not is_prime(n):
        candidates.append(h)
    if de is not None:
        candidates.append(de)
    gamma_prime_upper: Optional[int] = min(candidates)

    collapse: Optional[str] = None
    if gamma is not None and gamma == g:
        collapse = "gamma-equals-g"
    elif gamma is not None and n % 2 == 1:
        collapse = "odd-degree"
    if collapse:
        r_lo = r_hi = gamma
        gamma_prime_upper = gamma
    elif gamma is not None:
        r_lo, r_hi = gamma, min(gamma + 1, gamma_prime_upper)
    else:
        r_lo, r_hi = 2, gamma_prime_upper
        notes.append("covering number not certified at this degree; interval is coarse")
    return BoundReport(
        n=n,
        g=g,
        h=h,
        delta_e=de,
        gamma=gamma,
        gamma_status=status,
        gamma_prime_upper=gamma_prime_upper,
        r_lo=r_lo,
        r_hi=r_hi,
        collapse_rule=collapse,
        notes=notes,
    )
