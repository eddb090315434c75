"""Block machinery: frequent elements, rewriting, stripping, padding."""

import pytest
from hypothesis import given, settings, strategies as st

from zsseq import (
    PreconditionError,
    append_blocks,
    build_block,
    complete_block,
    foreign_count,
    frequent_elements,
    is_subsequence,
    is_t_avoiding,
    parse_sequence,
    reduce_fixpoint,
    reduce_step,
    strip_blocks,
)
from zsseq.sequences import BoundedSequence, concat, remove, repeat


@pytest.mark.parametrize(
    "alpha,beta,terms,length",
    [
        (1, 1, ((-1, 1), (1, 1)), 2),
        (3, 2, ((-2, 3), (3, 2)), 5),
        (2, 4, ((-4, 1), (2, 2)), 3),
        (4, 2, ((-2, 2), (4, 1)), 3),
        (6, 4, ((-4, 3), (6, 2)), 5),
    ],
)
def test_build_block(alpha, beta, terms, length):
    x = build_block(alpha, beta)
    assert x.block.terms == terms
    assert x.length == length
    assert x.block.sigma == 0


def test_build_block_requires_positive_parameters():
    with pytest.raises(PreconditionError):
        build_block(0, 2)
    with pytest.raises(PreconditionError):
        build_block(2, -1)


def test_frequent_elements_picks_both_sides():
    s = parse_sequence("2^6,1^2,-1^7,-2^1")
    assert frequent_elements(s, 6) == (2, 1)  # needs mult >= 4 at k=2, n=6
    assert frequent_elements(s, 12) is None  # needs mult >= 8; nobody qualifies


def test_frequent_elements_breaks_ties_toward_larger_values():
    s = parse_sequence("2^5,1^5,-1^5,-2^5")
    assert frequent_elements(s, 0) == (2, 2)


def test_frequent_elements_requires_both_signs():
    assert frequent_elements(parse_sequence("1^9"), 2) is None
    assert frequent_elements(parse_sequence("0^4"), 0) is None


def test_foreign_count():
    x = build_block(2, 1)
    s = parse_sequence("2^3,1^2,0^1,-1^4,-2^2")
    assert foreign_count(s, x) == 5  # 1^2, 0^1, -2^2


def test_append_blocks_grows_by_whole_blocks():
    x = build_block(3, 2)
    s = parse_sequence("1^1,-1^1")
    grown = append_blocks(s, x, 4)
    assert grown.length == s.length + 4 * x.length
    assert grown.sigma == 0


def test_append_preserves_avoidance_when_block_values_are_abundant():
    # 7-avoiding at k=2 (zero-sum lengths are multiples of 3), with at
    # least ceil(2*7/3) = 5 copies of each block value.
    s = parse_sequence("2^5,-1^10")
    x = build_block(2, 1)
    assert is_t_avoiding(s, 7)
    assert is_t_avoiding(append_blocks(s, x, 10), 7)


def test_append_can_break_avoidance_without_abundance():
    # 3-avoiding, but with no copies of the block values at all: two
    # appended blocks supply 1^2 . (-1)^2 and create {2,-1,-1}.
    s = parse_sequence("2^1,-2^1")
    x = build_block(1, 1)
    assert is_t_avoiding(s, 3)
    assert is_t_avoiding(append_blocks(s, x, 1), 3)
    assert not is_t_avoiding(append_blocks(s, x, 2), 3)


def test_reduce_step_worked_example():
    s = parse_sequence("3^1,1^4,-1^7")
    x = build_block(1, 1)
    step = reduce_step(s, x)
    assert step is not None
    assert step.removed == parse_sequence("3^1,-1^3")
    assert step.inserted_copies == 2
    assert step.result == parse_sequence("1^6,-1^6", bound=3)


def test_reduce_step_none_without_foreign_elements():
    x = build_block(2, 3)
    assert reduce_step(parse_sequence("2^3,-3^2"), x) is None


def test_reduce_step_none_when_no_qualifying_subsequence():
    # The single foreign element 5 cannot be completed to a zero-sum
    # piece of block length from 1^1 alone.
    s = BoundedSequence.from_terms({5: 1, 1: 1}, bound=5)
    assert reduce_step(s, build_block(1, 1)) is None


def test_reduce_step_removed_piece_properties():
    s = parse_sequence("3^2,2^1,1^3,-1^6,-2^2,0^1")
    x = build_block(1, 1)
    step = reduce_step(s, x)
    assert step is not None
    assert step.removed.sigma == 0
    assert step.removed.length == step.inserted_copies * x.length
    assert is_subsequence(step.removed, s)
    # the removed piece must carry at least one foreign element
    assert any(v not in (1, -1) for v, _ in step.removed.terms)


def test_reduce_fixpoint_trace_replays():
    s = parse_sequence("3^1,2^2,1^2,-1^7,-2^1,0^1")
    x = build_block(1, 1)
    trace = reduce_fixpoint(s, x)
    assert trace.initial == s
    current = s
    for st_ in trace.steps:
        current = concat(remove(current, st_.removed), repeat(x.block, st_.inserted_copies))
    assert current == trace.fixpoint
    assert trace.fixpoint.length == s.length
    assert trace.fixpoint.sigma == 0
    assert reduce_step(trace.fixpoint, x) is None
    assert len(trace.steps) <= foreign_count(s, x)


def test_reduce_fixpoint_is_deterministic():
    s = parse_sequence("3^2,1^5,-1^9,-2^1")
    x = build_block(1, 1)
    assert reduce_fixpoint(s, x) == reduce_fixpoint(s, x)


def test_strip_blocks():
    x = build_block(3, 2)
    s = parse_sequence("3^5,-2^7,1^1")
    stripped, count = strip_blocks(s, x)
    assert count == 2  # limited by 5 // 2 copies of 3 vs 7 // 3 copies of -2
    assert stripped == parse_sequence("3^1,-2^1,1^1")
    again, zero = strip_blocks(stripped, x)
    assert zero == 0
    assert again == stripped


def test_strip_blocks_trace_fields():
    s = parse_sequence("1^4,-1^5,0^1")
    x = build_block(1, 1)
    trace = reduce_fixpoint(s, x)
    assert trace.stripped == strip_blocks(trace.fixpoint, x)[0]
    assert trace.strip_count == strip_blocks(trace.fixpoint, x)[1]
    assert trace.strip_count * x.length + trace.stripped.length == s.length


@pytest.mark.parametrize(
    "text,alpha,beta,expected",
    [
        ("1^1", 3, 2, "-2^2,1^1,3^1"),
        ("", 1, 1, ""),
        ("-5^1", 3, 2, "-5^1,-2^2,3^3"),
        ("1^1,2^1", 3, 3, "-3^1,1^1,2^1"),
    ],
)
def test_complete_block_examples(text, alpha, beta, expected):
    completed = complete_block(parse_sequence(text), build_block(alpha, beta))
    assert completed == parse_sequence(expected)
    assert completed.sigma == 0


def test_complete_block_divisibility_precondition():
    with pytest.raises(PreconditionError):
        complete_block(parse_sequence("1^1"), build_block(2, 4))


@given(
    st.dictionaries(
        st.integers(min_value=-5, max_value=5), st.integers(min_value=1, max_value=4), max_size=4
    ),
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=1, max_value=5),
)
@settings(max_examples=200)
def test_complete_block_always_zero_sum(terms, alpha, beta):
    t = BoundedSequence.from_terms(terms)
    x = build_block(alpha, beta)
    if t.sigma % x.g:
        with pytest.raises(PreconditionError):
            complete_block(t, x)
        return
    completed = complete_block(t, x)
    assert completed.sigma == 0
    assert is_subsequence(t, completed)
    # only block values were added
    added = remove(completed, t)
    assert set(added.support) <= {alpha, -beta}
