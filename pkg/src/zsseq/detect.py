"""Exact-length zero-sum subsequence detection.

The kernel answers "does s contain a subsequence of length t summing to
zero?" (and more generally, which (length, sum) pairs are achievable) by a
layered dynamic program over the distinct values of s:

* State space: pairs (j, sigma) with 0 <= j <= c (the length cap) and
  |sigma| <= bound * c.  Each row j is one Python int used as a bitset over
  sums, with bit position sigma + offset where offset = bound * c.  Any
  subsequence of length j has |sum| <= bound * j <= offset, so the window
  never loses genuine states.

* Values are processed in ascending order.  Adding up to m copies of a
  value v uses the binary (power-of-two) decomposition of min(m, c): each
  chunk of w copies is a take-or-leave item applied with descending row
  index, which reaches exactly the copy counts 0..min(m, c).

* After each distinct value the full row block is retained as a layer, so
  a witness can be recovered by walking layers backwards.  At each layer
  the smallest feasible copy count is chosen, which makes witnesses
  deterministic across runs and platforms.

The memory footprint is estimated up-front from (layers x rows x window
bits); if it would exceed the configured cap the build is refused with
:class:`~zsseq.errors.ResourceLimitError` rather than degrading.

For cross-checking, :func:`brute_force_pairs` / :func:`brute_force_spectrum`
enumerate every subsequence explicitly and never touch the bitset code
path; tests and ``selftest`` compare the two routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import CrossCheckError, PreconditionError, ResourceLimitError
from .sequences import BoundedSequence

#: Default cap on the estimated table payload, in bytes (1 GiB).
DEFAULT_MEMORY_LIMIT = 1 << 30

# Rough per-row object overhead used in the estimate; Python ints are not
# flat words, so the payload-only figure would undercount.
_ROW_OVERHEAD = 48


@dataclass(frozen=True)
class ValueLayer:
    """Snapshot of all rows after one distinct value has been processed."""

    value: int
    mult: int
    rows: tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    """A subsequence found by the kernel, with the length it was asked for."""

    subsequence: BoundedSequence
    target_length: int


@dataclass(frozen=True)
class Spectrum:
    """Set of lengths of zero-sum subsequences of some source sequence."""

    lengths: frozenset[int]

    def as_sorted_list(self) -> list[int]:
        return sorted(self.lengths)


@dataclass(frozen=True)
class LengthSumTable:
    """Reachability table for (length, sum) pairs over subsequences of ``source``.

    ``rows[j]`` has bit (sigma + offset) set iff some subsequence of the
    whole source has length j and sum sigma.  ``layers`` holds the same row
    block after each distinct value (needed for witness recovery); it is
    empty when the table was built with ``keep_layers=False``.
    """

    source: BoundedSequence
    max_length: int
    offset: int
    width: int
    rows: tuple[int, ...]
    layers: tuple[ValueLayer, ...]

    def reachable(self, length: int, total: int = 0) -> bool:
        if not 0 <= length <= self.max_length:
            return False
        pos = total + self.offset
        if not 0 <= pos < self.width:
            return False
        return bool(self.rows[length] >> pos & 1)

    def achievable_pairs(self) -> Iterator[tuple[int, int]]:
        """All reachable (length, sum) pairs, in (length, sum) order."""
        for j, row in enumerate(self.rows):
            sigma = -self.offset
            while row:
                if row & 1:
                    yield (j, sigma)
                row >>= 1
                sigma += 1

    def zero_sum_lengths(self) -> frozenset[int]:
        return frozenset(j for j in range(self.max_length + 1) if self.rows[j] >> self.offset & 1)

    def witness(self, length: int, total: int = 0) -> BoundedSequence | None:
        """Recover one subsequence achieving (length, total), or None.

        Walks the retained layers backwards, taking the smallest feasible
        copy count of each value, which makes the result deterministic.
        """
        if not self.reachable(length, total):
            return None
        if len(self.layers) != len(self.source.terms):
            raise PreconditionError("table was built without layers; witnesses unavailable")
        counts: dict[int, int] = {}
        j, sigma = length, total
        for i in range(len(self.layers) - 1, -1, -1):
            layer = self.layers[i]
            prev = self.layers[i - 1].rows if i else _initial_rows(self.max_length, self.offset)
            for copies in range(0, min(layer.mult, j) + 1):
                pos = sigma - copies * layer.value + self.offset
                if 0 <= pos < self.width and prev[j - copies] >> pos & 1:
                    if copies:
                        counts[layer.value] = copies
                    j -= copies
                    sigma -= copies * layer.value
                    break
            else:  # pragma: no cover - impossible if the table is consistent
                raise CrossCheckError("witness backtracking lost a reachable state")
        assert j == 0 and sigma == 0
        return BoundedSequence.from_terms(counts, self.source.bound)


def _initial_rows(max_length: int, offset: int) -> tuple[int, ...]:
    rows = [0] * (max_length + 1)
    rows[0] = 1 << offset
    return tuple(rows)


def estimate_table_bytes(s: BoundedSequence, max_length: int) -> int:
    width = 2 * s.bound * max_length + 1
    rows = max_length + 1
    layers = len(s.terms) + 1
    return layers * rows * ((width + 7) // 8 + _ROW_OVERHEAD)


def build_table(
    s: BoundedSequence,
    max_length: int,
    memory_limit: int = DEFAULT_MEMORY_LIMIT,
    keep_layers: bool = True,
) -> LengthSumTable:
    """Build the reachability table for subsequences of length <= max_length."""
    if max_length < 0:
        raise PreconditionError(f"max_length must be >= 0, got {max_length}")
    estimate = estimate_table_bytes(s, max_length)
    if not keep_layers:
        estimate = 2 * estimate // (len(s.terms) + 1)
    if estimate > memory_limit:
        raise ResourceLimitError(
            f"table estimate {estimate} bytes exceeds the {memory_limit}-byte cap"
        )
    c = max_length
    offset = s.bound * c
    width = 2 * offset + 1
    mask = (1 << width) - 1
    rows = list(_initial_rows(c, offset))
    layers: list[ValueLayer] = []
    for value, mult in s.terms:
        remaining = min(mult, c)
        chunk = 1
        while remaining:
            w = min(chunk, remaining)
            remaining -= w
            chunk <<= 1
            shift = w * value
            if shift >= 0:
                for j in range(c, w - 1, -1):
                    src = rows[j - w]
                    if src:
                        rows[j] = (rows[j] | (src << shift)) & mask
            else:
                for j in range(c, w - 1, -1):
                    src = rows[j - w]
                    if src:
                        rows[j] |= src >> -shift
        if keep_layers:
            layers.append(ValueLayer(value, mult, tuple(rows)))
    return LengthSumTable(s, c, offset, width, tuple(rows), tuple(layers))


def find_zero_sum_of_length(
    s: BoundedSequence,
    t: int,
    memory_limit: int = DEFAULT_MEMORY_LIMIT,
) -> Witness | None:
    """Deterministic witness of a zero-sum subsequence of length exactly t, or None.

    Out-of-range targets (t < 0 or t > length of s) are simply absent.
    """
    if t < 0 or t > s.length:
        return None
    table = build_table(s, t, memory_limit=memory_limit)
    found = table.witness(t, 0)
    if found is None:
        return None
    assert found.sigma == 0 and found.length == t
    return Witness(found, t)


def is_t_avoiding(s: BoundedSequence, t: int, memory_limit: int = DEFAULT_MEMORY_LIMIT) -> bool:
    """True iff s has no zero-sum subsequence of length exactly t."""
    return find_zero_sum_of_length(s, t, memory_limit=memory_limit) is None


def spectrum(s: BoundedSequence, memory_limit: int = DEFAULT_MEMORY_LIMIT) -> Spectrum:
    """All lengths of zero-sum subsequences of s (always contains 0)."""
    table = build_table(s, s.length, memory_limit=memory_limit, keep_layers=False)
    return Spectrum(table.zero_sum_lengths())


def check_complement_duality(
    s: BoundedSequence,
    t: int,
    memory_limit: int = DEFAULT_MEMORY_LIMIT,
) -> bool:
    """For zero-sum s and 0 <= t <= |s|: is t-avoidance == (|s|-t)-avoidance?

    Removing a zero-sum subsequence from a zero-sum sequence leaves a
    zero-sum complement, so the two flags must always agree; a False return
    would indicate a kernel defect.
    """
    if s.sigma != 0:
        raise PreconditionError("complement duality only applies to zero-sum sequences")
    if not 0 <= t <= s.length:
        raise PreconditionError(f"t must lie in [0, {s.length}], got {t}")
    a = is_t_avoiding(s, t, memory_limit=memory_limit)
    b = is_t_avoiding(s, s.length - t, memory_limit=memory_limit)
    return a == b


# -- independent oracle (no bitsets, plain enumeration) -----------------


def enumerate_subsequences(s: BoundedSequence) -> Iterator[BoundedSequence]:
    """Every subsequence of s as a BoundedSequence (product of multiplicities)."""
    values = s.terms

    def go(i: int, acc: dict[int, int]) -> Iterator[BoundedSequence]:
        if i == len(values):
            yield BoundedSequence.from_terms(dict(acc), s.bound)
            return
        value, mult = values[i]
        for copies in range(mult + 1):
            if copies:
                acc[value] = copies
            yield from go(i + 1, acc)
        acc.pop(value, None)

    return go(0, {})


def brute_force_pairs(s: BoundedSequence) -> frozenset[tuple[int, int]]:
    """All (length, sum) pairs over subsequences of s, by explicit enumeration."""
    values = s.terms
    pairs: set[tuple[int, int]] = set()

    def go(i: int, length: int, total: int) -> None:
        if i == len(values):
            pairs.add((length, total))
            return
        value, mult = values[i]
        for copies in range(mult + 1):
            go(i + 1, length + copies, total + copies * value)

    go(0, 0, 0)
    return frozenset(pairs)


def brute_force_spectrum(s: BoundedSequence) -> frozenset[int]:
    return frozenset(length for length, total in brute_force_pairs(s) if total == 0)


def iter_zero_sum_sequences(
    k: int,
    length: int,
    include_zero: bool = True,
) -> Iterator[BoundedSequence]:
    """All zero-sum multisets over [-k, k] of the given total length.

    Deterministic order: multiplicities are fixed value by value with |value|
    descending (positive before negative); when ``include_zero`` is set the
    value 0 absorbs whatever length remains.  Branches whose partial sum can
    no longer be cancelled by the remaining values are cut.
    """
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if length < 0:
        raise PreconditionError(f"length must be >= 0, got {length}")
    order: list[int] = []
    for v in range(k, 0, -1):
        order.append(v)
        order.append(-v)
    # Bounds on the sum the suffix order[i:] can still contribute, per element.
    suffix_min = [0] * (len(order) + 1)
    suffix_max = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix_min[i] = min(order[i], suffix_min[i + 1])
        suffix_max[i] = max(order[i], suffix_max[i + 1])

    counts: dict[int, int] = {}

    def go(i: int, remaining: int, total: int) -> Iterator[BoundedSequence]:
        if i == len(order):
            if total == 0 and (include_zero or remaining == 0):
                if remaining:
                    counts[0] = remaining
                yield BoundedSequence.from_terms(dict(counts), k)
                counts.pop(0, None)
            return
        lo = suffix_min[i] if not include_zero else min(suffix_min[i], 0)
        hi = suffix_max[i] if not include_zero else max(suffix_max[i], 0)
        value = order[i]
        for copies in range(remaining + 1):
            nt = total + copies * value
            nr = remaining - copies
            if nt + nr * lo <= 0 <= nt + nr * hi:
                if copies:
                    counts[value] = copies
                yield from go(i + 1, nr, nt)
        counts.pop(value, None)

    return go(0, length, 0)
