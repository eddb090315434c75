"""Exception hierarchy shared across the package."""

from __future__ import annotations


class ZsseqError(Exception):
    """Base class for all errors raised by this package."""


class SequenceSyntaxError(ZsseqError):
    """Text or JSON input does not match the sequence grammar."""


class SequenceBoundError(ZsseqError):
    """A value lies outside the declared bound, or the bound/multiplicity is invalid."""


class SequenceOverflowError(ZsseqError):
    """Total length (or bound * length) would exceed the 63-bit guard."""


class SubsequenceError(ZsseqError):
    """An operand that must be a subsequence of the other is not."""


class PreconditionError(ZsseqError):
    """A documented operation precondition does not hold for the given inputs."""


class ResourceLimitError(ZsseqError):
    """A configured memory cap would be exceeded; the operation is refused."""


class CrossCheckError(ZsseqError):
    """Two independent computations of the same fact disagree (internal defect)."""
