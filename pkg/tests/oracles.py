"""Independent brute-force oracles shared by the test modules.

Everything here enumerates directly (sub-multisets, subsets, block
systems, affine maps), deliberately avoiding the decision procedures it
is used to check.
"""

from __future__ import annotations

from itertools import product

from sncover.components import (
    Affine,
    Alternating,
    Component,
    Imprimitive,
    Intransitive,
)
from sncover.explicit import (
    affine_cycle_types,
    iter_block_systems,
    perm_from_type,
    perm_sign,
    stabilizes_set,
)
from sncover.partitions import Partition


def all_submultisets(T: Partition):
    """Every (sub-multiset counts, sum) pair, including empty and full."""
    pairs = T.pairs()
    ranges = [range(m + 1) for _, m in pairs]
    for counts in product(*ranges):
        total = sum(j * c for (j, _), c in zip(pairs, counts))
        yield tuple(zip((j for j, _ in pairs), counts)), total


def brute_subset_sums(T: Partition) -> frozenset[int]:
    return frozenset(
        s for _, s in all_submultisets(T) if 0 < s < T.n
    )


def brute_proper_subpartitions(T: Partition):
    """All subpartitions (as Partition objects) with 0 < sum < n."""
    for counts, total in all_submultisets(T):
        if 0 < total < T.n:
            parts = []
            for j, c in counts:
                parts.extend([j] * c)
            yield Partition.from_parts(parts)


def brute_cut_exists(T: Partition, iso: Partition, c: int) -> bool:
    """Some c-cut of T isolates iso (checked against every subpartition)."""
    from sncover.partitions import is_subpartition, partition_difference

    for left in brute_proper_subpartitions(T):
        if left.n != c:
            continue
        right = partition_difference(T, left)
        if is_subpartition(iso, left) or is_subpartition(iso, right):
            return True
    return False


def brute_contains_type(H: Component, T: Partition) -> bool:
    """Explicit-permutation membership in a conjugate-closed realization."""
    from itertools import combinations

    n = T.n
    perm = perm_from_type(T)
    if isinstance(H, Intransitive):
        return any(
            stabilizes_set(perm, frozenset(sub)) for sub in combinations(range(n), H.x)
        )
    if isinstance(H, Imprimitive):
        return any(
            all(frozenset(perm[i] for i in block) in frozenset(system) for block in system)
            for system in iter_block_systems(n, H.b)
        )
    if isinstance(H, Alternating):
        return perm_sign(perm) == 1
    if isinstance(H, Affine):
        return T in affine_cycle_types(H.p)
    raise ValueError(f"no oracle for {H!r}")


def brute_projective_degrees(q_max: int, n: int) -> set[tuple[int, int]]:
    """All (d, q) with q a prime power <= q_max and (q^d-1)/(q-1) = n,
    scanning d up to log2(n+1) + 1."""
    import math

    out = set()
    d_max = int(math.log2(n + 1)) + 1
    for q in range(2, q_max + 1):
        if not _is_prime_power(q):
            continue
        for d in range(2, d_max + 1):
            if (q**d - 1) // (q - 1) == n and (q**d - 1) % (q - 1) == 0:
                out.add((d, q))
    return out


def _is_prime_power(q: int) -> bool:
    for p in range(2, q + 1):
        if p * p > q:
            return True  # q itself is prime
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return False
