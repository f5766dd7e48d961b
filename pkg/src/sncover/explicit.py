"""Explicit permutations on {0, ..., n-1} for small-degree ground truth.

Everything here enumerates honestly (subsets, block systems, affine maps) so
the criterion-based decision procedures elsewhere can be checked against an
independent realization.  Permutations are tuples of images.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence

from .errors import DomainError
from .partitions import Partition

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def perm_from_type(T: Partition) -> Perm:
    """A permutation of type T: cycles on consecutive letters, parts ascending."""
    images = list(range(T.n))
    start = 0
    for length in T.parts():
        for i in range(length):
            images[start + i] = start + (i + 1) % length
        start += length
    return tuple(images)


def perm_from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Perm:
    images = list(range(n))
    seen: set[int] = set()
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            if a in seen:
                raise DomainError("cycles must be disjoint")
            seen.add(a)
            images[a] = b
    return tuple(images)


def compose(p: Perm, q: Perm) -> Perm:
    """p then q (left-to-right application)."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_power(p: Perm, e: int) -> Perm:
    out = identity(len(p))
    base = p
    while e:
        if e & 1:
            out = compose(out, base)
        base = compose(base, base)
        e >>= 1
    return out


def cycle_type(p: Perm) -> Partition:
    n = len(p)
    seen = [False] * n
    mult = [0] * n
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        mult[length - 1] += 1
    return Partition(mult)


def perm_sign(p: Perm) -> int:
    T = cycle_type(p)
    return 1 if (T.n - T.part_count) % 2 == 0 else -1


def stabilizes_set(p: Perm, subset: frozenset[int]) -> bool:
    return frozenset(p[i] for i in subset) == subset


def stabilizes_each(perms: Sequence[Perm], subset: frozenset[int]) -> bool:
    return all(stabilizes_set(p, subset) for p in perms)


def iter_block_systems(n: int, b: int) -> Iterator[tuple[frozenset[int], ...]]:
    """All partitions of {0..n-1} into n/b blocks of size b, canonically."""
    if n % b:
        raise DomainError("block size must divide the degree")

    def rec(remaining: frozenset[int]) -> Iterator[tuple[frozenset[int], ...]]:
        if not remaining:
            yield ()
            return
        anchor = min(remaining)
        rest = sorted(remaining - {anchor})
        for others in combinations(rest, b - 1):
            block = frozenset((anchor,) + others)
            for tail in rec(remaining - block):
                yield (block,) + tail

    yield from rec(frozenset(range(n)))


def preserves_blocks(p: Perm, system: frozenset[frozenset[int]]) -> bool:
    return all(frozenset(p[i] for i in block) in system for block in system)


def preserved_by_all(perms: Sequence[Perm], system: tuple[frozenset[int], ...]) -> bool:
    as_set = frozenset(system)
    return all(preserves_blocks(p, as_set) for p in perms)


def affine_cycle_types(p: int) -> frozenset[Partition]:
    """Cycle types of all maps x -> a*x + b mod p (a nonzero)."""
    types = set()
    for a in range(1, p):
        for b in range(p):
            perm = tuple((a * x + b) % p for x in range(p))
            types.add(cycle_type(perm))
    return frozenset(types)
