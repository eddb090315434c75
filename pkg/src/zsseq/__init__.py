"""Zero-sum structure of integer sequences with elements in [-k, k].

The package answers questions of the shape "does this sequence contain a
zero-sum subsequence of length exactly t", computes the threshold length
beyond which avoidance is impossible, and provides the search, reduction,
and generation machinery around that threshold.
"""

from .constants import (
    ConstantValue,
    DivisibilityReport,
    davenport_subset,
    divisibility_condition,
    frobenius_number,
    lcm_growth_check,
    lcm_range,
    lemma41_margin_check,
    minimal_zero_sum_max_length,
    prime_powers_up_to,
    s_prime_t,
    theorem11_bounds,
)
from .detect import (
    DEFAULT_MEMORY_LIMIT,
    LengthSumTable,
    Spectrum,
    Witness,
    brute_force_pairs,
    brute_force_spectrum,
    build_table,
    check_complement_duality,
    enumerate_subsequences,
    estimate_table_bytes,
    find_zero_sum_of_length,
    is_t_avoiding,
    iter_zero_sum_sequences,
    spectrum,
)
from .errors import (
    CrossCheckError,
    PreconditionError,
    ResourceLimitError,
    SequenceBoundError,
    SequenceOverflowError,
    SequenceSyntaxError,
    SubsequenceError,
    ZsseqError,
)
from .reduction import (
    BlockX,
    ReduceStep,
    ReductionTrace,
    TraceStep,
    append_blocks,
    build_block,
    complete_block,
    foreign_count,
    frequent_elements,
    reduce_fixpoint,
    reduce_step,
    strip_blocks,
)
from .search import (
    ExtremalReport,
    FamilySpec,
    SearchResult,
    enumerate_extremal,
    family_generator,
    lemma42_search,
    longest_avoiding,
    verify_frobenius_avoidance,
)
from .sequences import (
    BoundedSequence,
    SignPartition,
    complement,
    concat,
    format_sequence,
    is_subsequence,
    negate,
    parse_sequence,
    remove,
    repeat,
    sigma,
    sign_partition,
)

__version__ = "0.1.0"

__all__ = [
    "BlockX",
    "BoundedSequence",
    "ConstantValue",
    "CrossCheckError",
    "DEFAULT_MEMORY_LIMIT",
    "DivisibilityReport",
    "ExtremalReport",
    "FamilySpec",
    "LengthSumTable",
    "PreconditionError",
    "ReduceStep",
    "ReductionTrace",
    "ResourceLimitError",
    "SearchResult",
    "SequenceBoundError",
    "SequenceOverflowError",
    "SequenceSyntaxError",
    "SignPartition",
    "Spectrum",
    "SubsequenceError",
    "TraceStep",
    "Witness",
    "ZsseqError",
    "append_blocks",
    "brute_force_pairs",
    "brute_force_spectrum",
    "build_block",
    "build_table",
    "check_complement_duality",
    "complement",
    "complete_block",
    "concat",
    "davenport_subset",
    "divisibility_condition",
    "enumerate_extremal",
    "enumerate_subsequences",
    "estimate_table_bytes",
    "family_generator",
    "find_zero_sum_of_length",
    "foreign_count",
    "format_sequence",
    "frequent_elements",
    "frobenius_number",
    "is_subsequence",
    "is_t_avoiding",
    "iter_zero_sum_sequences",
    "lcm_growth_check",
    "lcm_range",
    "lemma41_margin_check",
    "lemma42_search",
    "longest_avoiding",
    "minimal_zero_sum_max_length",
    "negate",
    "parse_sequence",
    "prime_powers_up_to",
    "reduce_fixpoint",
    "reduce_step",
    "remove",
    "repeat",
    "s_prime_t",
    "sigma",
    "sign_partition",
    "spectrum",
    "strip_blocks",
    "theorem11_bounds",
    "verify_frobenius_avoidance",
]
