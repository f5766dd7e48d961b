"""Integer partitions in multiplicity form, cuts, and cycle-type arithmetic.

A partition of n is stored as a multiplicity vector of fixed length n:
``mult[j-1]`` counts the parts equal to j, and ``sum(j * mult[j-1]) == n``.
Fixing the representation length to n gives a single canonical equality
test.  Partitions double as cycle types of degree-n permutations: parts are
orbit sizes, parts equal to 1 are fixed points, and two permutations are
conjugate exactly when their types coincide.

A c-cut of T splits it into a subpartition summing to c and the
complementary partition; the cut *isolates* T' when T' sits wholly inside
one side.  Cut existence is what set-stabilizer membership questions reduce
to, so subset sums over the part multiset are the workhorse here (bounded
knapsack on a bitmask).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DomainError


class Partition:
    """A partition of n as a length-n multiplicity vector (immutable)."""

    __slots__ = ("n", "mult", "_hash")

    def __init__(self, mult: Sequence[int]):
        mult = tuple(mult)
        n = len(mult)
        total = 0
        for j, m in enumerate(mult, start=1):
            if not 0 <= m <= n:
                raise DomainError(f"multiplicity {m} for part {j} outside 0..{n}")
            total += j * m
        if total != n:
            raise DomainError(f"multiplicities sum to {total}, expected {n}")
        if n == 0:
            raise DomainError("the empty partition is not allowed")
        self.n = n
        self.mult = mult
        self._hash = hash(mult)

    @classmethod
    def _make(cls, mult: tuple[int, ...]) -> "Partition":
        # trusted fast path for enumeration/arithmetic hot loops
        p = object.__new__(cls)
        p.n = len(mult)
        p.mult = mult
        p._hash = hash(mult)
        return p

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        parts = list(parts)
        if not parts:
            raise DomainError("at least one part required")
        n = sum(parts)
        mult = [0] * n
        for x in parts:
            if not 1 <= x <= n:
                raise DomainError(f"part {x} outside 1..{n}")
            mult[x - 1] += 1
        return cls._make(tuple(mult))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "Partition":
        """Build from [[part, multiplicity], ...] (the JSON wire form)."""
        parts: list[int] = []
        for entry in pairs:
            j, m = int(entry[0]), int(entry[1])
            if m <= 0 or j <= 0:
                raise DomainError(f"bad pair [{j}, {m}]")
            parts.extend([j] * m)
        return cls.from_parts(parts)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """(part, multiplicity) for positive multiplicities, ascending part."""
        return tuple((j, m) for j, m in enumerate(self.mult, start=1) if m)

    def to_pairs(self) -> list[list[int]]:
        return [[j, m] for j, m in self.pairs()]

    def parts(self) -> tuple[int, ...]:
        """All parts with repetition, ascending."""
        out: list[int] = []
        for j, m in self.pairs():
            out.extend([j] * m)
        return tuple(out)

    @property
    def part_count(self) -> int:
        return sum(self.mult)

    def mult_of(self, j: int) -> int:
        return self.mult[j - 1] if 1 <= j <= self.n else 0

    def bracket(self) -> str:
        """Bracket notation, e.g. [1^3,2^2,5]."""
        items = [f"{j}^{m}" if m > 1 else f"{j}" for j, m in self.pairs()]
        return "[" + ",".join(items) + "]"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.mult == other.mult

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Partition") -> bool:
        return (self.n, self.mult) < (other.n, other.mult)

    def __repr__(self) -> str:
        return f"Partition({self.bracket()})"


def count_partitions(n: int) -> int:
    """Partition number p(n) via the pentagonal-number recurrence.

    Independent of the enumerator below; used as its counting oracle and for
    resource caps.
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    return _pentagonal_count(n)


@lru_cache(maxsize=None)
def _pentagonal_count(n: int) -> int:
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = 1 if k % 2 else -1
        if g1 <= n:
            total += sign * _pentagonal_count(n - g1)
        if g2 <= n:
            total += sign * _pentagonal_count(n - g2)
        k += 1
    return total


def iter_partitions(n: int) -> Iterator[Partition]:
    """Yield the partitions of n ordered lexicographically by multiplicity
    vector (so [n] first, [1^n] last)."""
    if n < 1:
        raise DomainError("n must be at least 1")
    mult = [0] * n

    def rec(j: int, remaining: int) -> Iterator[Partition]:
        if remaining == 0:
            yield Partition._make(tuple(mult))
            return
        # part j taken 0.. times; the leftover must be 0 or coverable by
        # parts > j, i.e. at least j+1
        for c in range(remaining // j + 1):
            rem = remaining - c * j
            if rem == 0 or rem >= j + 1:
                mult[j - 1] = c
                yield from rec(j + 1, rem)
        mult[j - 1] = 0

    yield from rec(1, n)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in the documented deterministic order."""
    return list(iter_partitions(n))


@lru_cache(maxsize=16)
def partitions_tuple(n: int) -> tuple[Partition, ...]:
    """Cached enumeration for repeated coverage sweeps at one degree."""
    return tuple(iter_partitions(n))


def _sums_bitmask(pairs: tuple[tuple[int, int], ...], limit: int) -> int:
    """Bitmask of achievable sub-multiset sums (bit 0 always set)."""
    mask = 1
    cap = (1 << (limit + 1)) - 1
    for j, m in pairs:
        for _ in range(m):
            mask |= (mask << j) & cap
    return mask


@lru_cache(maxsize=None)
def subset_sums_mask(T: Partition) -> int:
    """Bitmask over 0..n of sums of sub-multisets of T's parts."""
    return _sums_bitmask(T.pairs(), T.n)


def subset_sums(T: Partition) -> frozenset[int]:
    """Proper achievable sums: all c with 0 < c < n reached by a subpartition.

    Closed under c -> n - c because complements of subpartitions are
    subpartitions.
    """
    mask = subset_sums_mask(T)
    return frozenset(c for c in range(1, T.n) if (mask >> c) & 1)


def is_subpartition(sub: Partition, whole: Partition) -> bool:
    return all(m <= whole.mult_of(j) for j, m in sub.pairs())


def partition_difference(whole: Partition, sub: Partition) -> Partition:
    """The complementary partition whole - sub (a partition of n - c)."""
    if not is_subpartition(sub, whole):
        raise DomainError("not a subpartition")
    rest = whole.n - sub.n
    if rest <= 0:
        raise DomainError("difference would be empty")
    mult = [0] * rest
    for j, m in whole.pairs():
        m -= sub.mult_of(j)
        if m:
            mult[j - 1] += m
    return Partition._make(tuple(mult))


@dataclass(frozen=True)
class Cut:
    """A c-cut [left | right] of ``whole``: left sums to c, right to n - c."""

    whole: Partition
    left: Partition
    right: Partition

    def __post_init__(self) -> None:
        if not 0 < self.left.n < self.whole.n:
            raise DomainError("cut size must satisfy 0 < c < n")
        if self.left.n + self.right.n != self.whole.n:
            raise DomainError("cut sides must sum to n")
        for j in range(1, self.whole.n + 1):
            if self.left.mult_of(j) + self.right.mult_of(j) != self.whole.mult_of(j):
                raise DomainError("sides are not complementary in the whole")

    @property
    def c(self) -> int:
        return self.left.n

    def isolates(self, T: Partition) -> bool:
        return is_subpartition(T, self.left) or is_subpartition(T, self.right)

    def __str__(self) -> str:
        return f"[{self.left.bracket()[1:-1]} | {self.right.bracket()[1:-1]}]"


def _suffix_masks(pairs: list[tuple[int, int]], limit: int) -> list[int]:
    masks = [1] * (len(pairs) + 1)
    cap = (1 << (limit + 1)) - 1
    for i in range(len(pairs) - 1, -1, -1):
        j, m = pairs[i]
        mask = masks[i + 1]
        for _ in range(m):
            mask |= (mask << j) & cap
        masks[i] = mask
    return masks


def _smallest_parts_first(pairs: list[tuple[int, int]], target: int) -> Optional[list[tuple[int, int]]]:
    """Pick a sub-multiset summing to target, greedily maximizing small parts.

    Feasibility of each greedy step is checked against suffix sum masks, so
    the walk never dead-ends.  Returns (part, count) picks or None.
    """
    if target == 0:
        return []
    masks = _suffix_masks(pairs, target)
    if not (masks[0] >> target) & 1:
        return None
    chosen: list[tuple[int, int]] = []
    rem = target
    for i, (j, m) in enumerate(pairs):
        take = min(m, rem // j)
        while take > 0 and not (masks[i + 1] >> (rem - take * j)) & 1:
            take -= 1
        if take:
            chosen.append((j, take))
            rem -= take * j
        if rem == 0:
            break
    return chosen if rem == 0 else None


def cut_isolating(T: Partition, iso: Partition, c: int) -> Optional[Cut]:
    """A deterministic c-cut of T isolating ``iso``, or None.

    Tries to place ``iso`` in the left side first, completing it to sum c
    with the smallest remaining parts; otherwise builds a left side of sum c
    disjoint from ``iso`` so the right side contains it.
    """
    if not is_subpartition(iso, T):
        raise DomainError(f"{iso.bracket()} is not a subpartition of {T.bracket()}")
    if not 0 < c < T.n:
        raise DomainError(f"cut size {c} outside 1..{T.n - 1}")
    rest_pairs = [
        (j, m - iso.mult_of(j))
        for j, m in T.pairs()
        if m - iso.mult_of(j) > 0
    ]
    if c >= iso.n:
        extra = _smallest_parts_first(rest_pairs, c - iso.n)
        if extra is not None:
            mult = [0] * c
            for j, m in iso.pairs():
                mult[j - 1] += m
            for j, m in extra:
                mult[j - 1] += m
            left = Partition._make(tuple(mult))
            return Cut(T, left, partition_difference(T, left))
    picks = _smallest_parts_first(rest_pairs, c)
    if picks is not None:
        mult = [0] * c
        for j, m in picks:
            mult[j - 1] += m
        left = Partition._make(tuple(mult))
        return Cut(T, left, partition_difference(T, left))
    return None


def type_power(T: Partition, e: int) -> Partition:
    """Cycle type of sigma^e for any sigma of type T.

    A length-l cycle raised to the e-th power splits into gcd(l, e) cycles
    of length l/gcd(l, e).
    """
    if e < 1:
        raise DomainError("exponent must be >= 1")
    mult = [0] * T.n
    for j, m in T.pairs():
        g = math.gcd(j, e)
        mult[j // g - 1] += m * g
    return Partition._make(tuple(mult))


def type_order(T: Partition) -> int:
    """Order of any permutation of type T: lcm of the parts."""
    return math.lcm(*(j for j, _ in T.pairs()))


def is_even_type(T: Partition) -> bool:
    """True when permutations of type T are even (sign +1), i.e. n - k even."""
    return (T.n - T.part_count) % 2 == 0
