"""Symbolic components of normal coverings of S_n and type membership.

A component stands for a conjugacy class of subgroups:

* ``Intransitive(x)`` — stabilizer of an x-set (P_x, maximal for x < n/2);
* ``Imprimitive(b, m)`` — stabilizer of a system of m blocks of size b
  (S_b wr S_m, n = b*m);
* ``Alternating`` — A_n;
* ``Affine(p)`` — AGL_1(p) inside S_p, prime degree only;
* ``ProjectiveFact(d, q, ext)`` — the family PGL_d(q) <= H <= PGammaL_d(q)
  acting on (q^d - 1)/(q - 1) points, kept as a fact-table entry: the rule
  engine can *exclude* types from it but never asserts positive membership;
* ``Sporadic(name)`` — the remaining fact-table entries (PSL_2(11), M_11,
  M_23, S_4) from the classification of primitive groups with an n-cycle.

``contains_type`` answers "does H contain a permutation of cycle type T"
exactly for the first four variants.  For the fact variants it raises
UndecidableError; only the exclusion rules below (Jordan power rule,
(n-1)-cycle rule, order divisibility) ever speak about them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from .errors import DomainError, UndecidableError
from .partitions import (
    Partition,
    is_even_type,
    partitions_tuple,
    subset_sums_mask,
    type_order,
    type_power,
)


@dataclass(frozen=True)
class Intransitive:
    x: int


@dataclass(frozen=True)
class Imprimitive:
    b: int
    m: int


@dataclass(frozen=True)
class Alternating:
    pass


@dataclass(frozen=True)
class Affine:
    p: int


@dataclass(frozen=True)
class ProjectiveFact:
    d: int
    q: int
    ext: bool  # True when PGammaL_d(q) is strictly larger than PGL_d(q)


@dataclass(frozen=True)
class Sporadic:
    name: str


Component = Union[Intransitive, Imprimitive, Alternating, Affine, ProjectiveFact, Sporadic]

ALTERNATING = Alternating()

_SPORADIC_ORDERS = {
    "PSL(2,11)": 660,
    "M11": 7920,
    "M23": 10200960,
    "S4": 24,
}


def is_prime(n: int) -> bool:
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


def prime_power_base(q: int) -> Optional[tuple[int, int]]:
    """(p, f) with q = p^f, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            return (q, 1)
        if q % p == 0:
            f = 0
            r = q
            while r % p == 0:
                r //= p
                f += 1
            return (p, f) if r == 1 else None
    return None


def validate_component(c: Component, n: int) -> None:
    if isinstance(c, Intransitive):
        if not 1 <= c.x <= n // 2:
            raise DomainError(f"P_{c.x} invalid for degree {n}: need 1 <= x <= n/2")
    elif isinstance(c, Imprimitive):
        if c.b < 2 or c.m < 2 or c.b * c.m != n:
            raise DomainError(f"S_{c.b} wr S_{c.m} invalid for degree {n}")
    elif isinstance(c, Alternating):
        if n < 3:
            raise DomainError("alternating component needs degree >= 3")
    elif isinstance(c, Affine):
        if c.p != n or not is_prime(n):
            raise DomainError(f"AGL_1({c.p}) only valid at prime degree {c.p}")
    elif isinstance(c, ProjectiveFact):
        pf = prime_power_base(c.q)
        if c.d < 2 or pf is None:
            raise DomainError(f"projective fact ({c.d},{c.q}) malformed")
        if (c.q**c.d - 1) // (c.q - 1) != n:
            raise DomainError(f"projective fact ({c.d},{c.q}) does not act on {n} points")
    elif isinstance(c, Sporadic):
        if c.name not in _SPORADIC_ORDERS:
            raise DomainError(f"unknown sporadic entry {c.name!r}")
    else:
        raise DomainError(f"not a component: {c!r}")


def component_key(c: Component) -> tuple:
    """Serialization order: intransitive by x, imprimitive by b, then A_n,
    affine, projective facts, sporadics."""
    if isinstance(c, Intransitive):
        return (0, c.x)
    if isinstance(c, Imprimitive):
        return (1, c.b)
    if isinstance(c, Alternating):
        return (2,)
    if isinstance(c, Affine):
        return (3, c.p)
    if isinstance(c, ProjectiveFact):
        return (4, c.d, c.q, c.ext)
    return (5, c.name)


def component_label(c: Component, n: int | None = None) -> str:
    if isinstance(c, Intransitive):
        return f"P_{c.x}"
    if isinstance(c, Imprimitive):
        return f"S_{c.b} wr S_{c.m}"
    if isinstance(c, Alternating):
        return f"A_{n}" if n else "A_n"
    if isinstance(c, Affine):
        return f"AGL_1({c.p})"
    if isinstance(c, ProjectiveFact):
        top = f"PGammaL_{c.d}({c.q})" if c.ext else f"PGL_{c.d}({c.q})"
        return top
    return c.name


def component_to_json(c: Component) -> dict:
    if isinstance(c, Intransitive):
        return {"kind": "intransitive", "x": c.x}
    if isinstance(c, Imprimitive):
        return {"kind": "imprimitive", "b": c.b, "m": c.m}
    if isinstance(c, Alternating):
        return {"kind": "alternating"}
    if isinstance(c, Affine):
        return {"kind": "affine", "p": c.p}
    if isinstance(c, ProjectiveFact):
        return {"kind": "projective", "d": c.d, "q": c.q, "ext": c.ext}
    return {"kind": "sporadic", "name": c.name}


def component_from_json(obj: dict) -> Component:
    kind = obj.get("kind")
    if kind == "intransitive":
        return Intransitive(int(obj["x"]))
    if kind == "imprimitive":
        return Imprimitive(int(obj["b"]), int(obj["m"]))
    if kind == "alternating":
        return ALTERNATING
    if kind == "affine":
        return Affine(int(obj["p"]))
    if kind == "projective":
        return ProjectiveFact(int(obj["d"]), int(obj["q"]), bool(obj.get("ext", False)))
    if kind == "sporadic":
        return Sporadic(str(obj["name"]))
    raise DomainError(f"unknown component kind {kind!r}")


@dataclass(frozen=True)
class ComponentPool:
    """An ordered duplicate-free universe of components for one degree."""

    n: int
    members: tuple[Component, ...]

    def __post_init__(self) -> None:
        seen = set()
        for c in self.members:
            validate_component(c, self.n)
            if c in seen:
                raise DomainError(f"duplicate component {component_label(c, self.n)}")
            seen.add(c)


@dataclass(frozen=True)
class BasicSet:
    """A candidate basic set: components plus what the constructor claims."""

    n: int
    components: tuple[Component, ...]
    claimed_basic: bool = False
    claimed_special: bool = False
    name: str = ""

    def __post_init__(self) -> None:
        if not self.components:
            raise DomainError("a basic set needs at least one component")
        seen = set()
        for c in self.components:
            validate_component(c, self.n)
            if c in seen:
                raise DomainError("duplicate component in basic set")
            seen.add(c)

    @property
    def size(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "components": [component_to_json(c) for c in self.components],
            "name": self.name,
        }


def wreath_divisors(n: int) -> list[int]:
    return [b for b in range(2, n // 2 + 1) if n % b == 0]


def standard_pool(n: int, include_half: bool = False) -> ComponentPool:
    """The default search universe: intransitive P_x (x < n/2, optionally
    x = n/2), all imprimitive wreaths, A_n, and AGL_1(n) at prime degree."""
    if n < 3:
        raise DomainError("pools start at degree 3")
    members: list[Component] = [Intransitive(x) for x in range(1, (n - 1) // 2 + 1)]
    if include_half and n % 2 == 0:
        members.append(Intransitive(n // 2))
    members.extend(Imprimitive(b, n // b) for b in wreath_divisors(n))
    members.append(ALTERNATING)
    if is_prime(n) and n >= 5:
        members.append(Affine(n))
    members.sort(key=component_key)
    return ComponentPool(n, tuple(members))


# ---------------------------------------------------------------------------
# membership


def _affine_contains(p: int, T: Partition) -> bool:
    # AGL_1(p) element types: identity, p-cycles, and [1, d^((p-1)/d)] for
    # d | p-1, d > 1 (a non-identity map x -> ax+b with a of order d fixes
    # one point and is d-regular elsewhere)
    if T.mult_of(1) == p:
        return True
    if T.mult_of(p) == 1:
        return True
    if T.mult_of(1) != 1:
        return False
    pairs = [(j, m) for j, m in T.pairs() if j != 1]
    if len(pairs) != 1:
        return False
    d, m = pairs[0]
    return d > 1 and d * m == p - 1 and (p - 1) % d == 0


def contains_type(H: Component, T: Partition) -> bool:
    """Exact decision of "T belongs to H" for the decidable variants.

    Fact-table variants (projective, sporadic) raise UndecidableError: the
    rule engine can only exclude types from those, never admit them.
    """
    n = T.n
    validate_component(H, n)
    if isinstance(H, Intransitive):
        return bool((subset_sums_mask(T) >> H.x) & 1)
    if isinstance(H, Imprimitive):
        return block_assignment(T, H.b, H.m) is not None
    if isinstance(H, Alternating):
        return is_even_type(T)
    if isinstance(H, Affine):
        return _affine_contains(H.p, T)
    raise UndecidableError(
        f"membership in {component_label(H, n)} is undecidable by the rule set"
    )


@lru_cache(maxsize=None)
def _block_assignment_cached(
    pairs: tuple[tuple[int, int], ...], b: int, m: int
) -> Optional[tuple[tuple[int, tuple[int, ...]], ...]]:
    parts = []
    for j, mm in pairs:
        parts.extend([j] * mm)
    parts.sort(reverse=True)
    return _group_parts(tuple(parts), b, m)


@lru_cache(maxsize=None)
def _group_parts(
    parts: tuple[int, ...], b: int, m: int
) -> Optional[tuple[tuple[int, tuple[int, ...]], ...]]:
    """Group ``parts`` (descending) so each group shares a divisor d with
    sum(part/d) = b, and the d's sum to m."""
    if not parts:
        return () if m == 0 else None
    if sum(parts) != b * m:
        return None
    head = parts[0]
    for d in sorted(_divisors(head)):
        if d > m or head // d > b:
            continue
        target = b - head // d
        rest = parts[1:]
        for companions in _companion_choices(rest, d, target):
            remaining = _remove(rest, companions)
            tail = _group_parts(remaining, b, m - d)
            if tail is not None:
                return ((d, (head,) + companions),) + tail
    return None


def _divisors(x: int) -> list[int]:
    out = []
    for d in range(1, int(math.isqrt(x)) + 1):
        if x % d == 0:
            out.append(d)
            if d != x // d:
                out.append(x // d)
    return out


def _companion_choices(parts: tuple[int, ...], d: int, target: int):
    """Sub-multisets of parts, each divisible by d, with sum(part/d) = target.

    Yields tuples in a canonical descending order without duplicates.
    """
    usable = [x for x in parts if x % d == 0 and x // d <= target]

    def rec(i: int, need: int):
        if need == 0:
            yield ()
            return
        prev = None
        for k in range(i, len(usable)):
            x = usable[k]
            if x == prev:
                continue
            if x // d > need:
                prev = x
                continue
            for tail in rec(k + 1, need - x // d):
                yield (x,) + tail
            prev = x

    yield from rec(0, target)


def _remove(parts: tuple[int, ...], taken: tuple[int, ...]) -> tuple[int, ...]:
    out = list(parts)
    for x in taken:
        out.remove(x)
    return tuple(out)


def block_assignment(T: Partition, b: int, m: int) -> Optional[list[tuple[int, tuple[int, ...]]]]:
    """Grouping witness for T belonging to S_b wr S_m, or None.

    Each group (d, parts) describes d blocks cyclically permuted together:
    d divides every part in the group and the parts contribute part/d points
    per block, so sum(part/d) = b; the d's over all groups sum to m.
    """
    if b < 2 or m < 2 or b * m != T.n:
        raise DomainError(f"({b},{m}) is not a block shape for degree {T.n}")
    got = _block_assignment_cached(T.pairs(), b, m)
    return None if got is None else list(got)


# ---------------------------------------------------------------------------
# primitive-group exclusion rules


@dataclass(frozen=True)
class ExclusionTrace:
    """Re-checkable witness that a type cannot sit in a primitive component."""

    type: Partition
    rule: str  # JordanPower | FeitClassification | NMinusOneCycle | OrderDivisibility
    witness: dict

    def to_json(self) -> dict:
        return {
            "type": self.type.to_pairs(),
            "rule": self.rule,
            "witness": self.witness,
        }


def jordan_excluded(T: Partition) -> Optional[ExclusionTrace]:
    """Exponent e with T^e of shape [1^(n-m), m], 2 <= m <= n-5, if any.

    A primitive group containing such an element contains A_n, so no
    primitive component other than the alternating one can contain T.
    Divisors of the type order exhaust all distinct powers.
    """
    n = T.n
    order = type_order(T)
    for e in sorted(_divisors(order)):
        P = type_power(T, e)
        moved = [(j, m) for j, m in P.pairs() if j >= 2]
        if len(moved) == 1 and moved[0][1] == 1:
            m = moved[0][0]
            if 2 <= m <= n - 5:
                return ExclusionTrace(
                    T,
                    "JordanPower",
                    {"exponent": e, "power_type": P.to_pairs(), "m": m},
                )
    return None


def feit_candidates(n: int) -> list[Component]:
    """Every primitive-group family that can contain an n-cycle.

    Projective families with (q^d - 1)/(q - 1) = n, the degree-11/23
    sporadics, AGL_1(n) at prime degree, and the degree-4 full-group
    exception.
    """
    if n < 4:
        raise DomainError("fact table starts at degree 4")
    out: list[Component] = []
    for q in range(2, n + 1):
        pf = prime_power_base(q)
        if pf is None:
            continue
        total, d = 1 + q, 2
        while total <= n:
            if total == n:
                out.append(ProjectiveFact(d, q, ext=pf[1] > 1))
                break
            total += q**d
            d += 1
    if n == 11:
        out.append(Sporadic("PSL(2,11)"))
        out.append(Sporadic("M11"))
    if n == 23:
        out.append(Sporadic("M23"))
    if is_prime(n) and n >= 5:
        out.append(Affine(n))
    if n == 4:
        out.append(Sporadic("S4"))
    out.sort(key=component_key)
    return out


def nminus1_cycle_allowed(fact: ProjectiveFact) -> bool:
    """Whether some group in the family contains an (n-1)-cycle: exactly
    d = 2 with q prime, or the (q, H) = (4, PGammaL_2(4)) exception."""
    if fact.d != 2:
        return False
    if is_prime(fact.q):
        return True
    return fact.q == 4 and fact.ext


def fact_group_order(fact: Component) -> int:
    """Order of the largest group in the fact family."""
    if isinstance(fact, ProjectiveFact):
        order = fact.q ** (fact.d * (fact.d - 1) // 2)
        for i in range(2, fact.d + 1):
            order *= fact.q**i - 1
        if fact.ext:
            pf = prime_power_base(fact.q)
            assert pf is not None
            order *= pf[1]
        return order
    if isinstance(fact, Sporadic):
        return _SPORADIC_ORDERS[fact.name]
    if isinstance(fact, Affine):
        return fact.p * (fact.p - 1)
    raise DomainError(f"{fact!r} has no tabulated order")


def order_divisibility_excludes(fact: Component, T: Partition) -> bool:
    """True when the element order forced by T does not divide the family
    order, so no group in the family contains T."""
    return fact_group_order(fact) % type_order(T) != 0


def is_n_cycle(T: Partition) -> bool:
    return T.mult_of(T.n) == 1


def is_nminus1_cycle(T: Partition) -> bool:
    return T.n >= 3 and T.mult_of(1) == 1 and T.mult_of(T.n - 1) == 1


def fact_excludes(fact: Component, T: Partition) -> Optional[ExclusionTrace]:
    """First firing exclusion rule for a fact-table component, or None."""
    trace = jordan_excluded(T)
    if trace is not None:
        return trace
    if isinstance(fact, ProjectiveFact) and is_nminus1_cycle(T) and not nminus1_cycle_allowed(fact):
        return ExclusionTrace(T, "NMinusOneCycle", {"d": fact.d, "q": fact.q, "ext": fact.ext})
    if order_divisibility_excludes(fact, T):
        return ExclusionTrace(
            T,
            "OrderDivisibility",
            {"element_order": type_order(T), "group_order": fact_group_order(fact)},
        )
    return None


def wildcard_excludes(T: Partition) -> Optional[ExclusionTrace]:
    """Exclusion from *any* primitive maximal subgroup other than A_n that
    is absent from the fact table.

    Such a group contains no n-cycle (else it would be a fact-table entry),
    and the Jordan rule applies to it like to any primitive group.
    """
    if is_n_cycle(T):
        return ExclusionTrace(T, "FeitClassification", {"reason": "n-cycle"})
    return jordan_excluded(T)


# ---------------------------------------------------------------------------
# type coverage over a component list


@dataclass
class TypeCoverage:
    n: int
    assignment: dict[Partition, Component]
    uncovered: list[Partition]
    unresolved: list[Partition]

    @property
    def complete(self) -> bool:
        return not self.uncovered and not self.unresolved


def type_coverage(n: int, components: Iterable[Component]) -> TypeCoverage:
    """Assign every type of S_n to the first component containing it.

    Types only coverable by fact-table components land in ``unresolved``
    unless a rule excludes them from every such component, in which case
    they are definitely ``uncovered``.
    """
    comps = list(components)
    decidable = [c for c in comps if not isinstance(c, (ProjectiveFact, Sporadic))]
    facts = [c for c in comps if isinstance(c, (ProjectiveFact, Sporadic))]
    assignment: dict[Partition, Component] = {}
    uncovered: list[Partition] = []
    unresolved: list[Partition] = []
    for T in partitions_tuple(n):
        hit = next((c for c in decidable if contains_type(c, T)), None)
        if hit is not None:
            assignment[T] = hit
        elif facts and any(fact_excludes(f, T) is None for f in facts):
            unresolved.append(T)
        else:
            uncovered.append(T)
    return TypeCoverage(n, assignment, uncovered, unresolved)
