import pytest

from sncover.components import (
    ALTERNATING,
    Affine,
    BasicSet,
    Imprimitive,
    Intransitive,
)
from sncover.errors import DomainError, InvalidShapeError, ResourceError
from sncover.metacyclic import (
    COVERED,
    IMPOSSIBLE,
    NOT_ESTABLISHED,
    covered_by,
    covered_by_alternating,
    covered_by_intransitive,
    covered_by_wreath,
    enumerate_shapes,
    is_special_basic_set,
    oracle_contained,
    relabeled_oracle_agrees,
    replay_even_special_coverage,
    shape,
)
from sncover.partitions import Partition, is_subpartition


# --- shapes


def test_shape_enumeration_small():
    assert [s.parts for s in enumerate_shapes(4)] == [(2,)]
    assert [s.parts for s in enumerate_shapes(5)] == [(2, 1)]
    assert [s.parts for s in enumerate_shapes(6)] == [(4,), (2, 2), (2, 1, 1)]
    assert enumerate_shapes(3) == []
    assert enumerate_shapes(2) == []


def test_shape_canonical_arrangement():
    s = shape(12, [3, 4, 1, 2])
    assert s.parts == (4, 2, 3, 1)  # evens descending, then odds descending
    assert s.even_count == 2
    assert s.sigma_order == 12
    assert s.sigma_type == Partition.from_parts([1, 1, 3, 4, 1, 2])


def test_shape_validation():
    with pytest.raises(InvalidShapeError):
        shape(5, [3])  # odd order
    with pytest.raises(InvalidShapeError):
        shape(8, [2, 2])  # wrong total
    with pytest.raises(InvalidShapeError):
        shape(3, [1])


def test_shape_counts_match_even_lcm_filter():
    for n in range(4, 20):
        shapes = enumerate_shapes(n)
        assert len({s.parts for s in shapes}) == len(shapes)
        for s in shapes:
            assert sum(s.parts) == n - 2
            assert any(x % 2 == 0 for x in s.parts)


# --- intransitive coverage (exact)


def test_intransitive_examples():
    v = covered_by_intransitive(shape(4, [2]), 2)
    assert v.status == COVERED
    left, right = (Partition.from_pairs(p) for p in v.witness["cut"])
    assert is_subpartition(Partition.from_parts([1, 1]), left) or is_subpartition(
        Partition.from_parts([1, 1]), right
    )
    assert covered_by_intransitive(shape(10, [4, 4]), 3).status == IMPOSSIBLE
    # an odd orbit can always be cut off on its own
    s = shape(10, [4, 3, 1])
    assert covered_by_intransitive(s, 3).status == COVERED


def test_intransitive_never_not_established():
    for n in range(4, 11):
        for s in enumerate_shapes(n):
            for x in range(1, n // 2 + 1):
                assert covered_by_intransitive(s, x).status in (COVERED, IMPOSSIBLE)


def test_intransitive_domain_error():
    with pytest.raises(DomainError):
        covered_by_intransitive(shape(8, [6]), 5)


def test_intransitive_matches_oracle_to_10():
    for n in range(4, 11):
        for s in enumerate_shapes(n):
            for x in range(1, n // 2 + 1):
                got = covered_by_intransitive(s, x).covered
                assert got == oracle_contained(s, Intransitive(x)), (s, x)


# --- wreath coverage (sufficient only)


def test_wreath_examples():
    assert covered_by_wreath(shape(8, [2, 4]), 2, 4).status == COVERED
    assert covered_by_wreath(shape(12, [4, 3, 3]), 2, 6).status == NOT_ESTABLISHED
    assert covered_by_wreath(shape(8, [6]), 2, 4).status == COVERED
    assert covered_by_wreath(shape(8, [6]), 4, 2).status == NOT_ESTABLISHED
    with pytest.raises(DomainError):
        covered_by_wreath(shape(8, [6]), 3, 2)


def test_wreath_covered_verdicts_oracle_confirmed_to_12():
    for n in range(4, 13):
        for s in enumerate_shapes(n):
            for b in (d for d in range(2, n // 2 + 1) if n % d == 0):
                if covered_by_wreath(s, b, n // b).covered:
                    assert oracle_contained(s, Imprimitive(b, n // b)), (s, b)


# --- alternating and affine targets


def test_alternating_always_impossible():
    for n in (4, 8, 11):
        for s in enumerate_shapes(n):
            assert covered_by_alternating(s).status == IMPOSSIBLE
    for n in (4, 6, 8, 10):
        for s in enumerate_shapes(n):
            assert not oracle_contained(s, ALTERNATING)


def test_affine_target_impossible():
    for s in enumerate_shapes(5):
        assert covered_by(s, Affine(5)).status == IMPOSSIBLE


# --- explicit oracle


def test_oracle_examples():
    # sigma = (3 4 5 6), tau = (1 2) inside S_6: the pair is a stabilized 2-set
    assert oracle_contained(shape(6, [4]), Intransitive(2))
    # sigma = (3 4)(5 6): block system of three pairs
    assert oracle_contained(shape(6, [2, 2]), Imprimitive(2, 3))
    with pytest.raises(InvalidShapeError):
        shape(5, [3])  # sigma = (3 4 5) has odd order


def test_oracle_degree_guard():
    with pytest.raises(ResourceError):
        oracle_contained(shape(13, [10, 1]), Intransitive(2))


def test_oracle_relabeling_invariance():
    checks = [
        (shape(8, [6]), Imprimitive(4, 2)),
        (shape(8, [6]), Imprimitive(2, 4)),
        (shape(8, [4, 2]), Intransitive(4)),
        (shape(10, [4, 4]), Intransitive(3)),
        (shape(9, [4, 2, 1]), Intransitive(3)),
    ]
    for seed, (s, H) in enumerate(checks):
        assert relabeled_oracle_agrees(s, H, seed=seed)


# --- special basic sets


def test_special_examples():
    from sncover.covering import build_named_set

    assert is_special_basic_set(build_named_set("deltaE", 8)).ok
    assert is_special_basic_set(build_named_set("delta1", 10)).ok
    lone = BasicSet(9, (ALTERNATING,))
    verdict = is_special_basic_set(lone)
    assert not verdict.ok and verdict.trivial_singleton
    assert Partition.from_parts([1] * 7 + [2]) in verdict.uncovered_types


def test_special_verdict_reports_shape_witnesses():
    # {P_1, P_3, S_4 wr S_2} covers all types of S_8 but misses the
    # metacyclic subgroup generated by a 6-cycle times a transposition
    delta = BasicSet(8, (Intransitive(1), Intransitive(3), Imprimitive(4, 2)))
    verdict = is_special_basic_set(delta)
    assert verdict.basic_ok
    assert not verdict.ok
    assert shape(8, [6]) in verdict.uncovered_shapes
    assert not verdict.unresolved_shapes


# --- constructive replay


def test_replay_covers_every_even_degree_to_30():
    for n in range(4, 31, 2):
        records = replay_even_special_coverage(n)
        assert len(records) == len(enumerate_shapes(n))
        for rec in records:
            assert rec.verdict.covered
            assert rec.verdict.rule in ("pair-isolating-cut", "all-cycles-even")


def test_replay_uses_only_declared_components():
    from sncover.covering import build_named_set

    for n in (6, 8, 10, 12, 16, 18, 24, 30):
        if n in (8, 16):
            allowed = set(build_named_set("primePower", n).components)
        elif n in (6, 10, 14, 22, 26):
            allowed = set(build_named_set("twoP", n).components)
        else:
            allowed = set(build_named_set("deltaC", n).components)
        for rec in replay_even_special_coverage(n):
            assert rec.component in allowed, (n, rec.shape, rec.component)
