"""Normal-covering invariants of symmetric groups.

Computes and certifies: the normal covering number gamma(S_n) over
declared component pools (with machine-checkable certificates), the
special covering number bound gamma'(S_n) via verified special basic
sets, and the induced interval for the least number of irreducible
factors r(S_n) of an intersective polynomial with Galois group S_n.
"""

from .bounds import (
    ConstructedComparison,
    DeltaERelation,
    compare_gh_range,
    construct_h_below_g,
    delta_e_size,
    delta_e_size_relation,
    factorize,
    g_bound,
    h_bound,
    phi_interval,
)
from .certificates import (
    CoverCertificate,
    DegreeCertification,
    SearchConstraints,
    check_certificate,
)
from .components import (
    ALTERNATING,
    Affine,
    Alternating,
    BasicSet,
    Component,
    ComponentPool,
    ExclusionTrace,
    Imprimitive,
    Intransitive,
    ProjectiveFact,
    Sporadic,
    block_assignment,
    component_from_json,
    component_label,
    component_to_json,
    contains_type,
    feit_candidates,
    jordan_excluded,
    nminus1_cycle_allowed,
    order_divisibility_excludes,
    standard_pool,
    type_coverage,
)
from .covering import (
    NAMED_SETS,
    BoundReport,
    build_named_set,
    interval_report,
    s8_special_triple,
    verify_basic_set,
    verify_special_basic_set,
)
from .errors import (
    ApplicabilityError,
    DomainError,
    InvalidShapeError,
    ResourceError,
    UndecidableError,
)
from .metacyclic import (
    CoverageVerdict,
    MetacyclicShape,
    covered_by,
    covered_by_alternating,
    covered_by_intransitive,
    covered_by_wreath,
    enumerate_shapes,
    is_special_basic_set,
    oracle_contained,
    replay_even_special_coverage,
    shape,
)
from .partitions import (
    Cut,
    Partition,
    count_partitions,
    cut_isolating,
    enumerate_partitions,
    is_even_type,
    is_subpartition,
    iter_partitions,
    partition_difference,
    subset_sums,
    type_order,
    type_power,
)
from .search import SearchLimits, certify_degree, min_cover_search

__version__ = "0.1.0"
