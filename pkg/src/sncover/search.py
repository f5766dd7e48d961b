"""Exact minimal-cover search and rule-certified degree claims.

The search is plain exact set cover: the universe is the type set of S_n,
the sets are the types each pool component contains, encoded as bitmasks.
Branch and bound picks the uncovered type with the fewest candidate
components and tries them ordered by fresh coverage (ties broken by the
serialization order of components), so certificates are deterministic for
a given pool order.  Optimality is recorded by exhausting the tree one
size below the incumbent.

``certify_degree`` goes further for degrees 10 and 14: the candidate
universe there is *all* maximal subgroups — named intransitive/imprimitive/
alternating components, the fact-table families of primitive groups that
can contain an n-cycle, and anonymous wildcard slots for any other
primitive class.  Every candidate of size gamma-1, and every candidate of
size gamma containing P_2, is refuted by exhibiting a type excluded from
each member (exact membership for named members, rule traces for fact
families and wildcards).  Candidates the rules cannot refute are reported
as unresolved rather than assumed away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .bounds import g_bound
from .certificates import (
    CoverCertificate,
    DegreeCertification,
    Refutation,
    SearchConstraints,
    candidate_signatures,
    component_to_json,
    is_fact_component,
)
from .components import (
    Component,
    ComponentPool,
    Intransitive,
    component_key,
    component_label,
    contains_type,
    fact_excludes,
    feit_candidates,
    standard_pool,
    wildcard_excludes,
)
from .errors import DomainError, ResourceError
from .partitions import Partition, count_partitions, partitions_tuple

DEFAULT_TYPE_CAP = 1_000_000


@dataclass
class SearchLimits:
    max_types: int = DEFAULT_TYPE_CAP
    force: bool = False


def _component_masks(
    n: int, components: Sequence[Component], types: Sequence[Partition]
) -> list[int]:
    masks = []
    for c in components:
        if is_fact_component(c):
            raise DomainError(
                f"{component_label(c, n)} is exclusion-only and cannot join a search pool"
            )
        mask = 0
        for i, T in enumerate(types):
            if contains_type(c, T):
                mask |= 1 << i
        masks.append(mask)
    return masks


@dataclass
class _SearchState:
    best_size: Optional[int]
    best_chosen: Optional[tuple[int, ...]]
    branches: int


def _cover_search(
    masks: list[int],
    order_key: list[tuple],
    full: int,
    start_mask: int,
    start_chosen: tuple[int, ...],
    cap: Optional[int],
) -> _SearchState:
    """Depth-first branch and bound; returns the best cover within cap."""
    state = _SearchState(None, None, 0)
    k = len(masks)
    type_count = full.bit_length()

    def dfs(covered: int, chosen: tuple[int, ...]) -> None:
        state.branches += 1
        if covered == full:
            if state.best_size is None or len(chosen) < state.best_size:
                state.best_size = len(chosen)
                state.best_chosen = chosen
            return
        budget = (cap if cap is not None else type_count) - len(chosen)
        if state.best_size is not None:
            budget = min(budget, state.best_size - 1 - len(chosen))
        if budget <= 0:
            return
        remaining = full & ~covered
        max_gain = max((masks[i] & remaining).bit_count() for i in range(k))
        if max_gain == 0 or math.ceil(remaining.bit_count() / max_gain) > budget:
            return
        # branch on the uncovered type with the fewest candidates
        used = set(chosen)
        pick_bit, pick_cands = -1, None
        r = remaining
        while r:
            bit = (r & -r).bit_length() - 1
            cands = [i for i in range(k) if (masks[i] >> bit) & 1 and i not in used]
            if not cands:
                return
            if pick_cands is None or len(cands) < len(pick_cands):
                pick_bit, pick_cands = bit, cands
                if len(cands) == 1:
                    break
            r &= r - 1
        pick_cands.sort(
            key=lambda i: (-(masks[i] & remaining).bit_count(), order_key[i])
        )
        for i in pick_cands:
            dfs(covered | masks[i], chosen + (i,))

    dfs(start_mask, start_chosen)
    return state


def min_cover_search(
    n: int,
    pool: Optional[ComponentPool] = None,
    constraints: Optional[SearchConstraints] = None,
    *,
    limits: Optional[SearchLimits] = None,
    default_cap_to_g: bool = True,
) -> CoverCertificate:
    """Certified minimum cover of the types of S_n over the declared pool.

    The size cap defaults to g(n) (a cover of that size always exists over
    the standard pool); exceeding constraints yield an explicit
    infeasibility certificate rather than an error.
    """
    if pool is None:
        pool = standard_pool(n)
    if pool.n != n or not pool.members:
        raise DomainError("pool degree mismatch or empty pool")
    constraints = constraints or SearchConstraints()
    limits = limits or SearchLimits()
    if count_partitions(n) > limits.max_types and not limits.force:
        raise ResourceError(
            f"p({n}) = {count_partitions(n)} types exceeds the cap {limits.max_types}"
        )
    members = [c for c in pool.members if c not in set(constraints.forced_out)]
    for c in constraints.forced_in:
        if c not in members:
            raise DomainError(
                f"forced-in {component_label(c, n)} is not available in the pool"
            )
    types = partitions_tuple(n)
    full = (1 << len(types)) - 1
    masks = _component_masks(n, members, types)
    order_key = [component_key(c) for c in members]

    cap = constraints.max_size
    if cap is None and default_cap_to_g and n >= 4:
        cap = max(g_bound(n), len(constraints.forced_in))
    start_mask = 0
    start_idx = []
    for c in constraints.forced_in:
        i = members.index(c)
        start_idx.append(i)
        start_mask |= masks[i]
    start = tuple(start_idx)

    state = _cover_search(masks, order_key, full, start_mask, start, cap)
    if state.best_size is None:
        return CoverCertificate(
            n=n,
            pool=tuple(members),
            constraints=constraints,
            feasible=False,
            size=None,
            chosen=(),
            assignment={},
            optimality={
                "status": "infeasible",
                "cap": cap,
                "branches_exhausted": state.branches,
            },
        )
    # optimality record: exhaust the tree one below the found size
    proof = _cover_search(
        masks, order_key, full, start_mask, start, state.best_size - 1
    )
    assert proof.best_size is None
    chosen = sorted((members[i] for i in state.best_chosen), key=component_key)
    assignment: dict[Partition, Component] = {}
    for T in types:
        assignment[T] = next(c for c in chosen if contains_type(c, T))
    return CoverCertificate(
        n=n,
        pool=tuple(members),
        constraints=constraints,
        feasible=True,
        size=state.best_size,
        chosen=tuple(chosen),
        assignment=assignment,
        optimality={
            "status": "optimal",
            "cap": cap,
            "branches_explored": state.branches,
            "infeasible_at": state.best_size - 1,
            "branches_exhausted_below": proof.branches,
        },
    )


# ---------------------------------------------------------------------------
# degree certification


SUPPORTED_CERTIFY = {10: 3, 14: 4}


def _refute(
    members: tuple[Component, ...],
    fams: tuple[Component, ...],
    wildcard: bool,
    types: Sequence[Partition],
    membership: dict[Component, list[bool]],
) -> Optional[Refutation]:
    """First type excluded from every member of the candidate, with traces."""
    for i, T in enumerate(types):
        if any(membership[c][i] for c in members):
            continue
        exclusions = []
        ok = True
        for fact in fams:
            trace = fact_excludes(fact, T)
            if trace is None:
                ok = False
                break
            exclusions.append(
                {"component": component_to_json(fact), "via": "rule", "trace": trace.to_json()}
            )
        if not ok:
            continue
        if wildcard:
            trace = wildcard_excludes(T)
            if trace is None:
                continue
            exclusions.append({"component": "wildcard", "via": "rule", "trace": trace.to_json()})
        return Refutation(members, fams, wildcard, T, exclusions)
    return None


def certify_degree(n: int) -> DegreeCertification:
    """Replay the exact-value argument for a supported degree.

    Establishes gamma over all maximal subgroups (not just the search
    pool) and the claim that no minimum-size basic set contains P_2.
    """
    if n not in SUPPORTED_CERTIFY:
        raise DomainError(f"degree {n} is not rule-certified (supported: 10, 14)")
    gamma = SUPPORTED_CERTIFY[n]
    cover = min_cover_search(n)
    if not cover.feasible or cover.size != gamma:
        raise AssertionError(f"pool search returned {cover.size}, expected {gamma}")

    pool = standard_pool(n)
    facts = [c for c in feit_candidates(n) if is_fact_component(c)]
    named = list(pool.members)
    universe = tuple(sorted(named + facts, key=component_key))
    types = partitions_tuple(n)
    membership = {c: [contains_type(c, T) for T in types] for c in named}

    unresolved: list[dict] = []

    def refute_all(size: int, must_include: Optional[Component]) -> list[Refutation]:
        out = []
        for members, fams, wildcard in candidate_signatures(
            named, facts, size, must_include=must_include
        ):
            r = _refute(members, fams, wildcard, types, membership)
            if r is None:
                unresolved.append(
                    {
                        "size": size,
                        "members": [component_to_json(c) for c in members],
                        "facts": [component_to_json(c) for c in fams],
                        "wildcard": wildcard,
                    }
                )
            else:
                out.append(r)
        return out

    lower = refute_all(gamma - 1, None)
    p2 = refute_all(gamma, Intransitive(2))
    return DegreeCertification(
        n=n,
        gamma=gamma,
        cover=cover,
        universe=universe,
        lower_bound_refutations=lower,
        p2_refutations=p2,
        unresolved=unresolved,
    )
