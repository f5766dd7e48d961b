import copy

import pytest

from sncover.certificates import (
    DegreeCertification,
    check_certificate,
    check_degree_certification,
)
from sncover.components import Intransitive, ProjectiveFact
from sncover.errors import DomainError
from sncover.partitions import Partition
from sncover.search import certify_degree

P = Partition.from_parts


def test_degree_10():
    cert = certify_degree(10)
    assert cert.gamma == 3
    assert cert.unresolved == []
    assert cert.cover.size == 3
    # every size-2 candidate and every size-3 candidate containing P_2 is refuted
    assert all(Intransitive(2) in r.members for r in cert.p2_refutations)
    report = check_degree_certification(cert)
    assert report.ok, report.problems


def test_degree_10_discharges_the_projective_family_by_the_cycle_rule():
    cert = certify_degree(10)
    fact = ProjectiveFact(2, 9, True)
    rules_used = set()
    for r in cert.lower_bound_refutations + cert.p2_refutations:
        if fact in r.facts:
            for e in r.exclusions:
                rules_used.add(e["trace"]["rule"])
    assert "NMinusOneCycle" in rules_used  # [1,9] cannot sit in the family (9 not prime)


def test_degree_14():
    cert = certify_degree(14)
    assert cert.gamma == 4
    assert cert.unresolved == []
    report = check_degree_certification(cert)
    assert report.ok, report.problems


def test_degree_14_needs_the_order_rule():
    cert = certify_degree(14)
    fact = ProjectiveFact(2, 13, False)
    # the candidate {P_2, P_3, P_5, PGL_2(13)} is refuted by [4,10]: the
    # element order 20 does not divide 2184
    key_members = (Intransitive(2), Intransitive(3), Intransitive(5))
    hit = [
        r
        for r in cert.p2_refutations
        if r.members == key_members and fact in r.facts and not r.wildcard
    ]
    assert len(hit) == 1
    r = hit[0]
    assert r.refuting_type == P([4, 10])
    assert any(e["trace"]["rule"] == "OrderDivisibility" for e in r.exclusions)


def test_unsupported_degree_rejected():
    with pytest.raises(DomainError):
        certify_degree(8)
    with pytest.raises(DomainError):
        certify_degree(12)


def test_json_roundtrip_and_checker():
    cert = certify_degree(10)
    obj = cert.to_json()
    parsed = DegreeCertification.from_json(obj)
    assert parsed.gamma == 3
    assert check_certificate(obj).ok


def test_checker_rejects_tampering():
    base = certify_degree(10).to_json()

    # drop one refutation: a candidate loses its coverage
    bad = copy.deepcopy(base)
    bad["lower_bound"]["refutations"] = bad["lower_bound"]["refutations"][1:]
    assert not check_certificate(bad).ok

    # swap a refuting type for one the candidate actually contains
    bad = copy.deepcopy(base)
    target = bad["p2_exclusion"]["refutations"][0]
    target["type"] = [[1, 8], [2, 1]]  # [1^8,2] lies in P_2
    assert not check_certificate(bad).ok

    # strip the exclusion trace backing a fact-family refutation
    bad = copy.deepcopy(base)
    for r in bad["lower_bound"]["refutations"]:
        if r["facts"]:
            r["exclusions"] = []
            break
    assert not check_certificate(bad).ok

    # claim a smaller value outright
    bad = copy.deepcopy(base)
    bad["gamma"] = 2
    assert not check_certificate(bad).ok
