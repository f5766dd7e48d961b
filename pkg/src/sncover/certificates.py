"""Versioned, machine-checkable certificates for search and degree claims.

Two kinds are emitted:

* ``cover-search`` — a minimum (or infeasibility) record for exact set
  cover of the types of S_n over a declared pool, with a per-type
  assignment and an optimality record (exhausted branches at size-1);

* ``degree-certification`` — the full degree-10/14 style claim: a witness
  cover, plus refutations of every candidate cover of smaller size and of
  every candidate of minimum size containing P_2, over all maximal
  subgroups (named components, fact-table families, and anonymous
  "other primitive" wildcard slots).

``check_certificate`` re-validates either kind from scratch using only the
partition calculus and the component rules — no search is re-run.  The
optimality branch count is the one attestation that cannot be re-derived
cheaply; everything else is recomputed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .components import (
    Component,
    Intransitive,
    ProjectiveFact,
    Sporadic,
    component_from_json,
    component_key,
    component_label,
    component_to_json,
    contains_type,
    fact_group_order,
    is_n_cycle,
    is_nminus1_cycle,
    nminus1_cycle_allowed,
)
from .errors import DomainError
from .partitions import Partition, partitions_tuple, type_order, type_power

SCHEMA_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def fingerprint(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]


def is_fact_component(c: Component) -> bool:
    return isinstance(c, (ProjectiveFact, Sporadic))


@dataclass(frozen=True)
class SearchConstraints:
    forced_in: tuple[Component, ...] = ()
    forced_out: tuple[Component, ...] = ()
    max_size: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "forced_in": [component_to_json(c) for c in self.forced_in],
            "forced_out": [component_to_json(c) for c in self.forced_out],
            "max_size": self.max_size,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchConstraints":
        return cls(
            tuple(component_from_json(c) for c in obj.get("forced_in", [])),
            tuple(component_from_json(c) for c in obj.get("forced_out", [])),
            obj.get("max_size"),
        )


@dataclass
class CoverCertificate:
    n: int
    pool: tuple[Component, ...]
    constraints: SearchConstraints
    feasible: bool
    size: Optional[int]
    chosen: tuple[Component, ...]
    assignment: dict[Partition, Component]
    optimality: dict
    version: int = SCHEMA_VERSION

    @property
    def pool_fingerprint(self) -> str:
        return fingerprint(
            {
                "n": self.n,
                "pool": [component_to_json(c) for c in self.pool],
                "constraints": self.constraints.to_json(),
            }
        )

    def to_json(self) -> dict:
        return {
            "kind": "cover-search",
            "version": self.version,
            "n": self.n,
            "pool": [component_to_json(c) for c in self.pool],
            "pool_fingerprint": self.pool_fingerprint,
            "constraints": self.constraints.to_json(),
            "feasible": self.feasible,
            "size": self.size,
            "chosen": [component_to_json(c) for c in self.chosen],
            "assignment": [
                [T.to_pairs(), component_to_json(c)] for T, c in sorted(self.assignment.items())
            ],
            "optimality": self.optimality,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CoverCertificate":
        if obj.get("kind") != "cover-search":
            raise DomainError("not a cover-search certificate")
        return cls(
            n=int(obj["n"]),
            pool=tuple(component_from_json(c) for c in obj["pool"]),
            constraints=SearchConstraints.from_json(obj.get("constraints", {})),
            feasible=bool(obj["feasible"]),
            size=obj.get("size"),
            chosen=tuple(component_from_json(c) for c in obj.get("chosen", [])),
            assignment={
                Partition.from_pairs(pairs): component_from_json(c)
                for pairs, c in obj.get("assignment", [])
            },
            optimality=dict(obj.get("optimality", {})),
            version=int(obj.get("version", SCHEMA_VERSION)),
        )


@dataclass
class Refutation:
    """One candidate cover and the type that defeats it."""

    members: tuple[Component, ...]  # named (decidable) components
    facts: tuple[Component, ...]  # fact-table families present
    wildcard: bool  # anonymous other-primitive slots present
    refuting_type: Partition
    exclusions: list[dict]  # per fact/wildcard member: rule trace JSON

    def key(self) -> str:
        return candidate_key(self.members, self.facts, self.wildcard)

    def to_json(self) -> dict:
        return {
            "members": [component_to_json(c) for c in self.members],
            "facts": [component_to_json(c) for c in self.facts],
            "wildcard": self.wildcard,
            "type": self.refuting_type.to_pairs(),
            "exclusions": self.exclusions,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Refutation":
        return cls(
            members=tuple(component_from_json(c) for c in obj["members"]),
            facts=tuple(component_from_json(c) for c in obj["facts"]),
            wildcard=bool(obj["wildcard"]),
            refuting_type=Partition.from_pairs(obj["type"]),
            exclusions=list(obj.get("exclusions", [])),
        )


def candidate_key(
    members: Sequence[Component], facts: Sequence[Component], wildcard: bool
) -> str:
    return canonical_json(
        {
            "members": [component_to_json(c) for c in sorted(members, key=component_key)],
            "facts": [component_to_json(c) for c in sorted(facts, key=component_key)],
            "wildcard": wildcard,
        }
    )


def candidate_signatures(
    named: Sequence[Component],
    facts: Sequence[Component],
    size: int,
    *,
    must_include: Optional[Component] = None,
) -> Iterator[tuple[tuple[Component, ...], tuple[Component, ...], bool]]:
    """All signatures of candidate basic sets of the given size.

    A signature fixes which named components appear (each is a single
    conjugacy class, so at most once), which fact families contribute at
    least one member, and whether any anonymous primitive classes appear.
    Leftover slots are legal only if they can be filled with further
    members of a present family or further anonymous classes.
    """
    from itertools import combinations

    named = sorted(named, key=component_key)
    facts = sorted(facts, key=component_key)
    for s in range(min(size, len(named)) + 1):
        for members in combinations(named, s):
            if must_include is not None and must_include not in members:
                continue
            for f in range(min(size - s, len(facts)) + 1):
                for fams in combinations(facts, f):
                    for wildcard in (False, True):
                        base = s + f + (1 if wildcard else 0)
                        if base > size:
                            continue
                        slack = size - base
                        if slack and not (f or wildcard):
                            continue
                        yield members, fams, wildcard


@dataclass
class DegreeCertification:
    n: int
    gamma: int
    cover: CoverCertificate
    universe: tuple[Component, ...]
    lower_bound_refutations: list[Refutation]
    p2_refutations: list[Refutation]
    unresolved: list[dict]
    version: int = SCHEMA_VERSION

    @property
    def p2_free(self) -> bool:
        return not self.unresolved

    def to_json(self) -> dict:
        return {
            "kind": "degree-certification",
            "version": self.version,
            "n": self.n,
            "gamma": self.gamma,
            "cover": self.cover.to_json(),
            "universe": [component_to_json(c) for c in self.universe],
            "lower_bound": {
                "target_size": self.gamma - 1,
                "refutations": [r.to_json() for r in self.lower_bound_refutations],
            },
            "p2_exclusion": {
                "size": self.gamma,
                "refutations": [r.to_json() for r in self.p2_refutations],
            },
            "unresolved": self.unresolved,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DegreeCertification":
        if obj.get("kind") != "degree-certification":
            raise DomainError("not a degree-certification certificate")
        return cls(
            n=int(obj["n"]),
            gamma=int(obj["gamma"]),
            cover=CoverCertificate.from_json(obj["cover"]),
            universe=tuple(component_from_json(c) for c in obj["universe"]),
            lower_bound_refutations=[
                Refutation.from_json(r) for r in obj["lower_bound"]["refutations"]
            ],
            p2_refutations=[
                Refutation.from_json(r) for r in obj["p2_exclusion"]["refutations"]
            ],
            unresolved=list(obj.get("unresolved", [])),
            version=int(obj.get("version", SCHEMA_VERSION)),
        )


@dataclass
class CheckReport:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def add(self, msg: str) -> None:
        self.ok = False
        self.problems.append(msg)


def verify_exclusion_trace(trace: dict, T: Partition, fact: Optional[Component]) -> bool:
    """Re-derive a stored exclusion trace instead of trusting it."""
    rule = trace.get("rule")
    if rule == "JordanPower":
        w = trace["witness"]
        e = int(w["exponent"])
        power = type_power(T, e)
        if power.to_pairs() != w["power_type"]:
            return False
        moved = [(j, m) for j, m in power.pairs() if j >= 2]
        return len(moved) == 1 and moved[0][1] == 1 and 2 <= moved[0][0] <= T.n - 5
    if rule == "FeitClassification":
        return is_n_cycle(T)
    if rule == "NMinusOneCycle":
        return (
            isinstance(fact, ProjectiveFact)
            and is_nminus1_cycle(T)
            and not nminus1_cycle_allowed(fact)
        )
    if rule == "OrderDivisibility":
        return fact is not None and fact_group_order(fact) % type_order(T) != 0
    return False


def _check_refutation(r: Refutation, n: int, report: CheckReport, label: str) -> None:
    T = r.refuting_type
    if T.n != n:
        report.add(f"{label}: refuting type degree mismatch")
        return
    for c in r.members:
        if is_fact_component(c):
            report.add(f"{label}: fact component listed among decidable members")
            return
        if contains_type(c, T):
            report.add(
                f"{label}: {T.bracket()} actually belongs to {component_label(c, n)}"
            )
            return
    traces = {canonical_json(e.get("component")): e for e in r.exclusions}
    for fact in r.facts:
        key = canonical_json(component_to_json(fact))
        entry = traces.get(key)
        if entry is None or not verify_exclusion_trace(entry.get("trace", {}), T, fact):
            report.add(
                f"{label}: no valid exclusion of {T.bracket()} from {component_label(fact, n)}"
            )
            return
    if r.wildcard:
        entry = traces.get(canonical_json("wildcard"))
        if entry is None or not verify_exclusion_trace(entry.get("trace", {}), T, None):
            report.add(f"{label}: no valid wildcard exclusion of {T.bracket()}")


def check_cover_certificate(cert: CoverCertificate) -> CheckReport:
    report = CheckReport(ok=True)
    n = cert.n
    pool_set = set(cert.pool)
    for c in cert.constraints.forced_in:
        if cert.feasible and c not in cert.chosen:
            report.add(f"forced-in {component_label(c, n)} missing from cover")
    for c in cert.constraints.forced_out:
        if c in cert.chosen:
            report.add(f"forced-out {component_label(c, n)} present in cover")
    if not cert.feasible:
        if cert.chosen or cert.assignment:
            report.add("infeasibility certificate carries a cover")
        return report
    if cert.size != len(cert.chosen):
        report.add("declared size differs from number of chosen components")
    if cert.constraints.max_size is not None and len(cert.chosen) > cert.constraints.max_size:
        report.add("cover exceeds the declared size cap")
    for c in cert.chosen:
        if c not in pool_set:
            report.add(f"chosen component {component_label(c, n)} not in pool")
    types = partitions_tuple(n)
    if set(cert.assignment) != set(types):
        missing = len(types) - len(set(cert.assignment) & set(types))
        report.add(f"assignment does not cover the type set exactly once ({missing} off)")
    chosen_set = set(cert.chosen)
    for T, c in cert.assignment.items():
        if c not in chosen_set:
            report.add(f"{T.bracket()} assigned to unchosen {component_label(c, n)}")
            break
        if not contains_type(c, T):
            report.add(f"{T.bracket()} does not belong to {component_label(c, n)}")
            break
    return report


def check_degree_certification(cert: DegreeCertification) -> CheckReport:
    report = check_cover_certificate(cert.cover)
    n = cert.n
    if cert.cover.n != n:
        report.add("embedded cover is for a different degree")
    if not cert.cover.feasible or cert.cover.size != cert.gamma:
        report.add("embedded cover does not witness the claimed value")
    if cert.unresolved:
        report.add(f"{len(cert.unresolved)} unresolved candidates")
    named = [c for c in cert.universe if not is_fact_component(c)]
    facts = [c for c in cert.universe if is_fact_component(c)]
    for size, refutations, include, label in (
        (cert.gamma - 1, cert.lower_bound_refutations, None, "lower-bound"),
        (cert.gamma, cert.p2_refutations, Intransitive(2), "P_2-exclusion"),
    ):
        provided = {r.key(): r for r in refutations}
        expected = 0
        for members, fams, wildcard in candidate_signatures(
            named, facts, size, must_include=include
        ):
            expected += 1
            key = candidate_key(members, fams, wildcard)
            r = provided.get(key)
            if r is None:
                report.add(f"{label}: candidate {key} lacks a refutation")
                continue
            _check_refutation(r, n, report, label)
        if expected != len(provided):
            report.add(
                f"{label}: {len(provided)} refutations for {expected} candidates"
            )
    return report


def check_certificate(obj: dict) -> CheckReport:
    kind = obj.get("kind")
    if kind == "cover-search":
        return check_cover_certificate(CoverCertificate.from_json(obj))
    if kind == "degree-certification":
        return check_degree_certification(DegreeCertification.from_json(obj))
    report = CheckReport(ok=True)
    report.add(f"unknown certificate kind {kind!r}")
    return report
